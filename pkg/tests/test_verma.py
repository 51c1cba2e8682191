import random

import pytest

from stepalg.freealg import (
    FreeElt, composite_f, principal_word, serre_element, serre_pairs, tau,
)
from stepalg.rootdata import root_data
from stepalg.scalars import RF_ONE, RF_ZERO, RatFn, mono
from stepalg.verma import (
    TensorVec, VermaVec, act_e, act_tensor_e, act_tensor_f, act_tensor_qh,
    cartan_scalar, graded_project, is_zero, is_zero_verma, multiset_perms,
    pair,
)

SMALL = [("A", 2), ("B", 2), ("C", 2), ("D", 2)]
RANK3 = [("A", 3), ("B", 3), ("C", 3), ("D", 3)]


def test_act_e_kills_vacuum():
    rd = root_data("B", 2)
    for k in (1, 2):
        assert act_e(rd, k, VermaVec.vacuum()).is_free_zero()


def test_act_e_single_letter():
    rd = root_data("C", 2)
    v = VermaVec({(1,): RF_ONE})
    got = act_e(rd, 1, v)
    # (q^{(lambda,a1)} - q^{-(lambda,a1)})/(q - qbar) with a1 = e1 - e2
    num = RatFn.from_mono(mono(0, (2, -2))) - RatFn.from_mono(mono(0, (-2, 2)))
    assert got.coeff(()) == num / (RatFn.qpow(2) - RatFn.qpow(-2))
    assert act_e(rd, 2, v).is_free_zero()


def test_act_e_b_short_root_denominator():
    rd = root_data("B", 2)
    v = VermaVec({(2,): RF_ONE})
    got = act_e(rd, 2, v)
    num = RatFn.from_mono(mono(0, (0, 2))) - RatFn.from_mono(mono(0, (0, -2)))
    assert got.coeff(()) == num / (RatFn.qpow(2) - RatFn.qpow(-2))


def test_act_e_c_long_root_denominator():
    rd = root_data("C", 2)
    v = VermaVec({(2,): RF_ONE})
    got = act_e(rd, 2, v)
    num = RatFn.from_mono(mono(0, (0, 4))) - RatFn.from_mono(mono(0, (0, -4)))
    assert got.coeff(()) == num / (RatFn.qpow(4) - RatFn.qpow(-4))


def test_pair_examples():
    rd = root_data("B", 2)
    assert pair(rd, (), VermaVec.vacuum()).is_one()
    v = VermaVec({(1,): RF_ONE})
    assert pair(rd, (1,), v) == cartan_scalar(rd, 1, ())
    assert pair(rd, (2,), v).is_zero()


def test_is_zero_trivial_cases():
    rd = root_data("C", 2)
    assert is_zero(rd, FreeElt.zero())
    comm = FreeElt.word((1, 2)) - FreeElt.word((2, 1))
    assert not is_zero(rd, comm)


@pytest.mark.parametrize("fam,rank", SMALL + RANK3)
def test_serre_relations_hold(fam, rank):
    rd = root_data(fam, rank)
    for k, l in serre_pairs(rd):
        assert is_zero(rd, serre_element(rd, k, l)), (fam, rank, k, l)


@pytest.mark.parametrize("fam,rank", SMALL)
def test_serre_relations_symbolic(fam, rank):
    rd = root_data(fam, rank)
    for k, l in serre_pairs(rd):
        assert is_zero(rd, serre_element(rd, k, l), symbolic=True)


@pytest.mark.parametrize("fam,rank", [p for p in SMALL + RANK3 if p[0] != "A"])
def test_tau_lemma_small(fam, rank):
    # the flip i -> N+1-i mirrors weights only for the self-dual natural
    # modules, so the identity is a B/C/D statement
    rd = root_data(fam, rank)
    for i in range(1, rd.N + 1):
        for j in range(i + 1, rd.N + 1):
            if not rd.precedes(i, j):
                continue
            lhs = tau(composite_f(rd, i, j))
            rhs = composite_f(rd, rd.prime(j), rd.prime(i))
            assert is_zero(rd, lhs - rhs), (fam, rank, i, j)


def test_faithfulness_random_products():
    rng = random.Random(23)
    for fam, rank in SMALL:
        rd = root_data(fam, rank)
        for _ in range(5):
            i = rng.randint(1, rd.N - 1)
            js = [j for j in range(i + 1, rd.N + 1) if rd.precedes(i, j)]
            j = rng.choice(js)
            elt = composite_f(rd, i, j)
            if elt.is_zero_repr():
                continue
            assert not is_zero(rd, elt), (fam, rank, i, j)


def test_relation_consistency_random_vectors():
    # e_k f_k - f_k e_k acts as the Cartan scalar on random word vectors
    rng = random.Random(31)
    rd = root_data("B", 2)
    for _ in range(10):
        w = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 3)))
        v = VermaVec({w: RF_ONE})
        for k in (1, 2):
            from stepalg.verma import act_f
            lhs = act_e(rd, k, act_f(k, v)) - act_f(k, act_e(rd, k, v))
            rhs = v.scale(cartan_scalar(rd, k, w))
            diff = lhs - rhs
            assert is_zero_verma(rd, diff, symbolic=True)


def test_act_tensor_top_vector():
    rd = root_data("C", 2)
    x = TensorVec.basis(1)
    for k in (1, 2):
        got = act_tensor_e(rd, k, x)
        assert got.is_free_zero() or all(v.is_free_zero() for v in got.comps.values())


def test_act_tensor_qh_weight():
    rd = root_data("C", 2)
    x = TensorVec.basis(2)
    got = act_tensor_qh(rd, 2, x)
    v = got.comps[2]
    # q^{(a2, e2 + lambda)} = q^2 * t2^2
    assert v.coeff(()) == RatFn.from_mono(mono(4, (0, 4)))


def test_act_tensor_f_moves_node():
    rd = root_data("C", 2)
    x = TensorVec.basis(1)
    got = act_tensor_f(rd, 1, x)
    assert got.comps[2].coeff(()) == RF_ONE
    # second leg: q^{-(a1, e1)} w_1 (x) f_1 v
    assert got.comps[1].coeff((1,)) == RatFn.qpow(-2)


def test_multiset_perms():
    assert sorted(multiset_perms((2, 1))) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert multiset_perms((0, 0)) == [()]


def test_graded_project_generator():
    rd = root_data("C", 2)
    for j in (1, 2, 3):
        assert graded_project(rd, j, TensorVec.basis(j)).is_one()


def test_graded_project_principal_value():
    for fam, rank in SMALL:
        rd = root_data(fam, rank)
        for j in range(2, rd.N + 1):
            for i in range(1, j):
                if not rd.precedes(i, j):
                    continue
                w = principal_word(rd, i, j)
                x = TensorVec({i: VermaVec({w: RF_ONE})})
                got = graded_project(rd, j, x)
                e2 = rd.rho_tilde2(i) - rd.rho_tilde2(j)
                expect = RatFn.qpow(e2)
                if rd.dist(i, j) % 2:
                    expect = -expect
                assert got == expect, (fam, rank, i, j)


def test_graded_project_nonprincipal_zero():
    rd = root_data("C", 2)
    for j in range(2, rd.N + 1):
        for i in range(1, j):
            mults = rd.simple_mults(rd.node_gap(i, j))
            if mults is None:
                continue
            psi = principal_word(rd, i, j)
            for w in multiset_perms(mults):
                if w == psi:
                    continue
                x = TensorVec({i: VermaVec({w: RF_ONE})})
                assert graded_project(rd, j, x).is_zero(), (i, j, w)


def test_graded_project_rejects_outsiders():
    rd = root_data("C", 2)
    # w_4 (x) v has weight lambda + eps_4, not in V_2's weight slice shape
    with pytest.raises((ValueError, ArithmeticError)):
        x = TensorVec({4: VermaVec.vacuum()})
        # weight mismatch shows up as a non-membership failure
        if graded_project(rd, 2, x).is_zero():
            raise ValueError("unexpected membership")
