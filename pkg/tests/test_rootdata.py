from fractions import Fraction

import pytest

from stepalg.rootdata import AffineForm, root_data

ALL_SMALL = [("A", 1), ("A", 2), ("A", 3), ("B", 1), ("B", 2), ("B", 3),
             ("C", 1), ("C", 2), ("C", 3), ("D", 2), ("D", 3), ("D", 4)]


def test_dimensions():
    assert root_data("A", 3).N == 4
    assert root_data("B", 2).N == 5
    assert root_data("C", 2).N == 4
    assert root_data("D", 3).N == 6


def test_invalid_rank():
    with pytest.raises(ValueError):
        root_data("D", 1)
    with pytest.raises(ValueError):
        root_data("E", 3)


def test_so5_rho():
    rd = root_data("B", 2)
    assert rd.rho2 == (3, 1)  # rho = (3/2, 1/2)


def test_sp4_generator_matrices():
    rd = root_data("C", 2)
    assert rd.e_maps[1] == {3: 2}  # pi(e_2) = E_23
    # pi(h_{alpha_2}) diagonal entries (alpha_2, eps_i) = 2, -2 on nodes 2, 3
    assert rd.ip(rd.alphas[1], rd.eps[1]) == 2
    assert rd.ip(rd.alphas[1], rd.eps[2]) == -2


def test_so8_weights_flip():
    rd = root_data("D", 4)
    assert rd.eps[3] == (0, 0, 0, 1)
    assert rd.eps[4] == (0, 0, 0, -1)


def test_weights_mirror_all():
    for fam, rank in ALL_SMALL:
        rd = root_data(fam, rank)
        if fam == "A":
            continue
        for i in range(1, rd.N + 1):
            assert rd.eps[rd.prime(i) - 1] == tuple(-x for x in rd.eps[i - 1])


def test_arc_weights_consistent():
    # f_k moves a basis vector down by alpha_k
    for fam, rank in ALL_SMALL:
        rd = root_data(fam, rank)
        for src, dst, k in rd.covers:
            gap = rd.node_gap(src, dst)
            assert gap == rd.alphas[k - 1], (fam, rank, src, dst, k)


def test_sp4_eta_12():
    rd = root_data("C", 2)
    assert rd.eta(1, 2) == AffineForm((2, -2), 0)  # lambda_1 - lambda_2


def test_eta_ii_zero():
    rd = root_data("B", 3)
    for i in (1, 4, 7):
        f = rd.eta(i, i)
        assert f.is_const() and f.c2 == 0


def test_proposition_eta_sums():
    # eta_{m,1'} + eta_{m',1'} = eta_{1,1'} for m = 2..n, every family/rank
    for fam in "BCD":
        for rank in range(2 if fam != "D" else 2, 7):
            rd = root_data(fam, rank)
            top = rd.prime(1)
            for m in range(2, rd.n + 1):
                assert rd.eta(m, top) + rd.eta(rd.prime(m), top) == rd.eta(1, top)


def test_proposition_eta_b_type():
    # 2*eta_{*,m'} - 1 = eta_{m,m'} for so(2n+1)
    for rank in range(1, 7):
        rd = root_data("B", rank)
        s = rd.star
        for m in range(1, rd.n + 1):
            lhs = rd.eta(s, rd.prime(m)).scale(2) - AffineForm((0,) * rd.nvars, 2)
            assert lhs == rd.eta(m, rd.prime(m))


def test_xi_minus_eta_constant():
    for fam, rank in ALL_SMALL:
        rd = root_data(fam, rank)
        for i in range(1, rd.N + 1):
            for j in range(1, rd.N + 1):
                d = rd.xi(i, j) - rd.eta(i, j)
                assert d.is_const()
                ei, ej = rd.eps[i - 1], rd.eps[j - 1]
                assert d.c2 == 2 * (rd.ip(ei, ei) - rd.ip(ei, ej))


def test_hasse_sp4_chain():
    rd = root_data("C", 2)
    assert rd.covers == [(1, 2, 1), (2, 3, 2), (3, 4, 1)]


def test_hasse_so6_diamond():
    rd = root_data("D", 3)
    assert (2, 3, 2) in rd.covers and (2, 4, 3) in rd.covers
    assert (3, 5, 3) in rd.covers and (4, 5, 2) in rd.covers
    assert not rd.precedes(3, 4) and not rd.precedes(4, 3)


def test_one_precedes_top():
    for fam, rank in ALL_SMALL:
        rd = root_data(fam, rank)
        assert rd.precedes(1, rd.N)


def test_order_only_increases():
    for fam, rank in ALL_SMALL:
        rd = root_data(fam, rank)
        for i in range(1, rd.N + 1):
            for j in range(1, rd.N + 1):
                if rd.precedes(i, j):
                    assert i < j


def test_order_prime_antisymmetry():
    for fam, rank in ALL_SMALL:
        rd = root_data(fam, rank)
        if fam == "A":
            continue
        for i in range(1, rd.N + 1):
            for j in range(1, rd.N + 1):
                if rd.precedes(i, j):
                    assert rd.precedes(rd.prime(j), rd.prime(i))


def test_routes_so6():
    rd = root_data("D", 3)
    assert set(rd.routes(1, 5)) == {(), (2,), (3,), (4,), (2, 3), (2, 4)}


def test_routes_sp4():
    rd = root_data("C", 2)
    assert rd.routes(1, 4) == ((), (2,), (2, 3), (3,))


def test_routes_adjacent_and_vacuous():
    rd = root_data("B", 2)
    assert rd.routes(1, 2) == ((),)
    assert rd.routes(3, 2) == ()


def test_route_count_on_chains():
    # chain segments: 2^(number of strictly interior nodes)
    for fam, rank in [("B", 3), ("C", 3), ("A", 3)]:
        rd = root_data(fam, rank)
        for i in range(1, rd.N):
            for j in range(i + 1, rd.N + 1):
                assert len(rd.routes(i, j)) == 2 ** (j - i - 1)


def test_all_paths_equal_length():
    for fam, rank in ALL_SMALL:
        rd = root_data(fam, rank)
        for i in range(1, rd.N + 1):
            for j in range(i + 1, rd.N + 1):
                if not rd.precedes(i, j):
                    continue
                lens = {len(p) - 1 for p in rd.paths(i, j)}
                assert lens == {rd.dist(i, j)}


def test_simple_mults():
    rd = root_data("D", 3)
    # eps_1 - eps_6 = 2*eps_1 = 2a_1 + a_2 + a_3
    assert rd.simple_mults(rd.node_gap(1, 6)) == (2, 1, 1)
    # not a positive combination
    assert rd.simple_mults(tuple(-x for x in rd.node_gap(1, 2))) is None
    # D-type incomparable middle pair
    assert rd.simple_mults(rd.node_gap(3, 4)) is None


def test_sigma_nodes():
    rd = root_data("D", 3)
    assert rd.sigma_nodes() == (1, 2, 5, 6)
    rd = root_data("B", 2)
    assert rd.sigma_nodes() == (1, 2, 4, 5)
