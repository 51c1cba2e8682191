import random

import pytest

from stepalg.freealg import (
    FreeElt, composite_f, omega, principal_word, qcomm, serre_element,
    serre_pairs, tau,
)
from stepalg.rootdata import root_data
from stepalg.scalars import RF_ONE, RatFn, qint_scaled


def test_qcomm_self_is_zero():
    x = FreeElt.word((1, 2))
    assert qcomm(x, x, RF_ONE).is_zero_repr()


def test_qcomm_definition():
    f1, f2 = FreeElt.gen(1), FreeElt.gen(2)
    got = qcomm(f2, f1, RatFn.qpow(-2))
    assert got.coeff((2, 1)) == RF_ONE
    assert got.coeff((1, 2)) == -RatFn.qpow(-2)


def _rand_word_elt(rng, letters=3, maxlen=3):
    w = tuple(rng.randint(1, letters) for _ in range(rng.randint(1, maxlen)))
    return FreeElt.word(w, coeff=RatFn.qpow(2 * rng.randint(-2, 2)))


def test_modified_jacobi_random():
    # [x,[y,z]_a]_b = [[x,y]_c, z]_{ab/c} + c [y,[x,z]_{b/c}]_{a/c}
    rng = random.Random(3)
    for _ in range(100):
        x, y, z = (_rand_word_elt(rng) for _ in range(3))
        a, b, c = (RatFn.qpow(2 * rng.randint(-3, 3)) for _ in range(3))
        lhs = qcomm(x, qcomm(y, z, a), b)
        rhs = (qcomm(qcomm(x, y, c), z, a * b / c)
               + qcomm(y, qcomm(x, z, b / c), a / c).scale(c))
        assert lhs.same_terms(rhs)


def test_composite_boundaries():
    rd = root_data("C", 2)
    assert composite_f(rd, 2, 2).coeff(()) == RF_ONE
    assert composite_f(rd, 3, 2).is_zero_repr()


def test_composite_arcs_are_generators():
    for fam, rank in [("A", 3), ("B", 2), ("C", 2), ("D", 3)]:
        rd = root_data(fam, rank)
        for src, dst, k in rd.covers:
            if fam == "C" and (src, dst) == (rd.n, rd.n + 1):
                continue  # middle symplectic entry is [2]_q f_n, not f_n
            elt = composite_f(rd, src, dst)
            assert list(elt.terms) == [(k,)], (fam, src, dst)
            assert elt.coeff((k,)) == RF_ONE


def test_composite_sp4_explicit():
    # f_{14} = q[f_{24}, f_1]_{qbar^2} with f_{24} = [f_1, f_2]_{qbar^2};
    # the principal word f1 f2 f1 carries q + qbar^3
    rd = root_data("C", 2)
    elt = composite_f(rd, 1, 4)
    assert set(elt.terms) == {(1, 2, 1), (2, 1, 1), (1, 1, 2)}
    assert elt.coeff((1, 2, 1)) == RatFn.qpow(2) + RatFn.qpow(-6)
    assert elt.coeff((2, 1, 1)) == -RatFn.qpow(-2)
    assert elt.coeff((1, 1, 2)) == -RatFn.qpow(-2)


def test_composite_sp4_middle():
    # f_{nn'} = [2]_q f_n sits at the pair (2, 3) for sp(4)
    rd = root_data("C", 2)
    elt = composite_f(rd, 2, 3)
    assert list(elt.terms) == [(2,)]
    assert elt.coeff((2,)) == qint_scaled(2, 2)


def test_composite_b_middle():
    # so(2n+1): f_{nn'} = (q-1) f_n^2
    rd = root_data("B", 2)
    elt = composite_f(rd, 2, 4)
    assert list(elt.terms) == [(2, 2)]
    assert elt.coeff((2, 2)) == RatFn.qpow(2) - RF_ONE


def test_composite_d_middle_zero():
    rd = root_data("D", 3)
    assert composite_f(rd, 3, 4).is_zero_repr()


def test_composite_weight_homogeneous():
    for fam, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 3)]:
        rd = root_data(fam, rank)
        for i in range(1, rd.N + 1):
            for j in range(i + 1, rd.N + 1):
                elt = composite_f(rd, i, j)
                if elt.is_zero_repr():
                    continue
                gap = rd.node_gap(i, j)
                for w in elt.terms:
                    assert rd.weight_of_word(w) == gap, (fam, i, j, w)


def test_principal_word_examples():
    rd = root_data("C", 2)
    assert principal_word(rd, 1, 4) == (1, 2, 1)
    rd = root_data("D", 3)
    assert principal_word(rd, 1, 5) == (1, 2, 3)
    assert principal_word(rd, 2, 3) == (2,)


def test_omega_involution_and_tau():
    rd = root_data("B", 2)
    x = composite_f(rd, 1, 4)
    assert omega(omega(x)).same_terms(x)
    assert omega(x).sign == "e"
    y = tau(tau(x))
    assert y.same_terms(x)
    with pytest.raises(ValueError):
        tau(omega(x))


def test_tau_antihomomorphism_random():
    rng = random.Random(5)
    for _ in range(50):
        x, y = (_rand_word_elt(rng) for _ in range(2))
        assert tau(x * y).same_terms(tau(y) * tau(x))


def test_tau_fixes_generators():
    assert tau(FreeElt.gen(2)).same_terms(FreeElt.gen(2))


def test_serre_element_shapes():
    rd = root_data("B", 2)
    # a_{12} = -1 for (alpha_1, alpha_2) in B2 with alpha_1 long
    s = serre_element(rd, 1, 2)
    assert set(s.terms) == {(1, 1, 2), (1, 2, 1), (2, 1, 1)}
    # a_{21} = -2: cubic relation in f_2
    s = serre_element(rd, 2, 1)
    assert set(s.terms) == {(2, 2, 2, 1), (2, 2, 1, 2), (2, 1, 2, 2), (1, 2, 2, 2)}
    assert len(serre_pairs(rd)) == 2
