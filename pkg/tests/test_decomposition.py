import pytest

from stepalg.decomposition import (
    c_coeff, chat_coeff, cj_factored, cj_projection, cj_route,
    direct_sum_report, phi, ratio_is_monomial, regularized_cj,
    zero_locus_ratio,
)
from stepalg.freealg import composite_f, principal_word
from stepalg.rootdata import root_data
from stepalg.scalars import RF_ONE, RatFn, WeightSpec, qint_scaled
from stepalg.shapovalov import a_coeff

THREEWAY = [("C", 2), ("B", 2), ("D", 3), ("A", 2)]


def test_c_coeff_generic_is_q_power():
    rd = root_data("C", 3)
    c = c_coeff(rd, 1, 2)
    assert c.den.is_one() and len(c.num.terms) == 1


def test_c_coeff_orthogonal_mirror_pair():
    # i = j' orthogonal: qbar*qbar^eta(0) - q
    rd = root_data("B", 2)
    e0 = rd.eta(2, 4).c2
    assert rd.prime(4) == 2
    assert c_coeff(rd, 2, 4) == RatFn.qpow(-2 - e0) - RatFn.qpow(2)


def test_c_coeff_matches_principal_term():
    # the path words of f_{ij} jointly carry (-1)^(dist-1) c_{ij}; the sum
    # covers the two equal-projection words of a D-type diamond pair
    for fam, rank in [("C", 2), ("B", 2), ("D", 3), ("C", 3), ("B", 3), ("A", 3)]:
        rd = root_data(fam, rank)
        for i in range(1, rd.N + 1):
            for j in range(i + 1, rd.N + 1):
                if not rd.precedes(i, j):
                    continue
                elt = composite_f(rd, i, j)
                words = set()
                for p in rd.paths(i, j):
                    words.add(tuple(rd.arc_label(a, b) for a, b in zip(p, p[1:])))
                got = RatFn.zero()
                for w in words:
                    got = got + elt.coeff(w)
                expect = c_coeff(rd, i, j)
                if rd.dist(i, j) % 2 == 0:
                    expect = -expect
                assert got == expect, (fam, rank, i, j)


def test_cj_route_base_cases():
    rd = root_data("C", 1)  # sp(2)
    assert cj_route(rd, 1).is_one()
    two = qint_scaled(2, 2)
    expect = RF_ONE - two * RatFn.qpow(4) * a_coeff(rd, 1, 2)
    assert cj_route(rd, 2) == expect

    rd = root_data("B", 1)  # so(3)
    from stepalg.shapovalov import standard_frame
    y = standard_frame(rd, 3)(rd.star)
    expect = (y - RatFn.qpow(2)) / (y - RatFn.qpow(-2))
    assert cj_route(rd, 3) == expect


@pytest.mark.parametrize("fam,rank", THREEWAY)
def test_factorization_matches_route(fam, rank):
    rd = root_data(fam, rank)
    for j in range(1, rd.N + 1):
        assert cj_route(rd, j) == cj_factored(rd, j), (fam, rank, j)


@pytest.mark.parametrize("fam,rank", [("C", 2), ("B", 2), ("D", 3)])
def test_projection_matches_route(fam, rank):
    rd = root_data(fam, rank)
    for j in range(1, rd.N + 1):
        assert cj_projection(rd, j) == cj_route(rd, j), (fam, rank, j)


def test_phi_special_cases():
    rd = root_data("D", 3)
    for j in range(2, rd.N + 1):
        i = rd.prime(j)
        if 1 <= i < j:
            assert phi(rd, i, j).is_one()
    rd = root_data("C", 2)
    # symplectic mirror pairs use the generic formula
    assert not phi(rd, 1, 4).is_one()


def test_direct_sum_generic_weight():
    rd = root_data("C", 2)
    rep = direct_sum_report(rd, WeightSpec.parse("3,1"))
    assert rep.verdict and not rep.witnesses


def test_direct_sum_degenerate_weight():
    # lambda = (-1, -1): xi_23(lambda) = 0 gives a splitting obstruction
    rd = root_data("C", 2)
    rep = direct_sum_report(rd, WeightSpec.parse("-1,-1"))
    assert not rep.verdict
    assert (2, 3) in rep.witnesses


def test_direct_sum_report_soundness():
    rd = root_data("B", 2)
    rep = direct_sum_report(rd, WeightSpec.parse("2,1"))
    assert rep.verdict == (not rep.witnesses)
    for i, j, s, zero in rep.entries:
        assert zero == ((i, j) in rep.witnesses)


def test_borderline_phase_weight_so5():
    # q^(2(lambda+rho, eps_2)) = -1: x_2/x_4 = 1 but every phi is nonzero
    rd = root_data("B", 2)
    w = WeightSpec.parse("3,-1/2", "1,i")
    rep = direct_sum_report(rd, w)
    assert (2, 4) in rep.x_coincidences
    assert rep.verdict


@pytest.mark.parametrize("fam,rank", [("C", 2), ("B", 2), ("D", 3)])
def test_zero_locus_ratio_monomial(fam, rank):
    rd = root_data(fam, rank)
    for j in range(2, rd.N + 1):
        r = zero_locus_ratio(rd, j)
        assert ratio_is_monomial(r), (fam, rank, j, str(r))
        assert not r.is_zero()


def test_diamond_path_words_project_equally():
    # both arc paths through the so(6) diamond give the same projection value
    from stepalg.verma import TensorVec, VermaVec, graded_project
    rd = root_data("D", 3)
    vals = set()
    for p in rd.paths(2, 5):
        w = tuple(rd.arc_label(a, b) for a, b in zip(p, p[1:]))
        x = TensorVec({2: VermaVec({w: RF_ONE})})
        vals.add(str(graded_project(rd, 5, x)))
    assert len(vals) == 1
    # dist(2,5) = 2, so the sign (-1)^dist is positive
    expect = RatFn.qpow(rd.rho_tilde2(2) - rd.rho_tilde2(5))
    x = TensorVec({2: VermaVec({(2, 3): RF_ONE})})
    assert graded_project(rd, 5, x) == expect


def test_regularized_cj_vanishes_with_phi():
    # at a weight killing some phi_{ij}, the regularized singular vector
    # falls into the lower filtration layer: its projection scalar is zero
    rd = root_data("C", 2)
    w = WeightSpec.parse("-1,-1")
    zero_js = set()
    for j in range(2, rd.N + 1):
        mono = zero_locus_ratio(rd, j)
        val = mono.evaluate(w)
        prod = RF_ONE
        for i in range(1, j):
            prod = prod * phi(rd, i, j).evaluate(w)
        cj = val * prod
        if cj.is_zero():
            zero_js.add(j)
    assert 3 in zero_js
