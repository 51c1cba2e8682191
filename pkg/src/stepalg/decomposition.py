"""Projection coefficients of the singular vectors onto the graded layers
of the standard filtration, their closed factorization, and the criterion
for V (x) M_lambda to split into a direct sum of Verma modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rootdata import q_form
from .scalars import GR_MINUS_ONE, RF_ONE, RF_ZERO, RatFn, q_minus_qbar, qint_scaled
from .shapovalov import (
    a_coeff, abar_coeff, delta_minus, prec_nodes, singular_vector, standard_frame,
)
from .verma import graded_project


def c_coeff(rd, i, j):
    """Principal-term constant of the composite root vector at (i, j)."""
    if not rd.precedes(i, j):
        raise ValueError(f"{i} does not precede {j}")
    e0 = rd.eta(i, j).c2  # doubled constant term
    generic = RatFn.qpow(-e0)
    if rd.family == "A" or rd.prime(j) != i:
        return generic
    sigma = RF_ONE if rd.family == "C" else RatFn.const(-1)
    return RatFn.qpow(-2 - e0) + sigma * RatFn.qpow(2)


def b_coeff(rd, i, j, frame=None):
    """B_i = -A_i, the route-sum variable of the projection coefficients."""
    return -a_coeff(rd, i, j, frame)


def chat_coeff(rd, i, j, frame=None):
    """Projection of one column entry: the route sum of principal constants
    against products of B coefficients, times q^(rho~_i - rho~_j)."""
    if i == j:
        return RF_ONE
    if not rd.precedes(i, j):
        return RF_ZERO
    shift = RatFn.qpow(rd.rho_tilde2(i) - rd.rho_tilde2(j))
    out = RF_ZERO
    for route in rd.routes(i, j):
        nodes = (i,) + route + (j,)
        coeff = shift
        for a, b in zip(nodes, nodes[1:]):
            coeff = coeff * c_coeff(rd, a, b)
        for l in nodes[:-1]:
            coeff = coeff * b_coeff(rd, l, j, frame)
        out = out + coeff
    return out


def cj_route(rd, j, frame=None):
    """Graded projection coefficient of the j-th singular vector, summed
    over all columns by routes."""
    out = RF_ZERO
    for i in range(1, j + 1):
        out = out + chat_coeff(rd, i, j, frame)
    return out


def cj_factored(rd, j, frame=None):
    """Closed product form of the projection coefficient."""
    if j == 1:
        return RF_ONE
    fam = rd.family
    frame = frame or standard_frame(rd, j)

    def gen_factor(i):
        return RF_ONE - RatFn.qpow(2) * a_coeff(rd, i, j, frame)

    jp = rd.prime(j) if fam != "A" else 0
    out = RF_ONE
    for i in range(1, j):
        if fam != "A" and i == jp:
            continue
        if fam == "B" and rd.N % 2 and i == rd.star:
            continue
        out = out * gen_factor(i)
    if fam == "C" and 1 <= jp < j:
        two = qint_scaled(2, 2)
        out = out * (RF_ONE - two * RatFn.qpow(4) * a_coeff(rd, jp, j, frame))
    if fam == "B" and rd.star < j:
        ystar = frame(rd.star)
        out = out * (ystar - RatFn.qpow(2)) / (ystar - RatFn.qpow(-2))
    return out


def cj_projection(rd, j):
    """Independent computation through the graded projection of the actual
    singular vector."""
    return graded_project(rd, j, singular_vector(rd, j))


def phi(rd, i, j):
    """Splitting factor of the pair (i, j): (q^(2 xi_ij) - 1)/(q - qbar),
    with the orthogonal i = j' exception."""
    if not 1 <= i < j <= rd.N:
        raise ValueError("need i < j within the node range")
    if rd.family in ("B", "D") and i == rd.prime(j):
        if rd.N % 2 == 0:
            return RF_ONE
        num = q_form(rd.xi(i, j)) - RF_ONE
        return num / RatFn(q_minus_qbar())
    num = q_form(rd.xi(i, j), 2) - RF_ONE
    return num / RatFn(q_minus_qbar())


def regularized_cj(rd, j, frame=None):
    """Projection coefficient of the regularized singular vector:
    cj times the full clearing product, divided by delta_minus."""
    out = cj_route(rd, j, frame)
    for l in prec_nodes(rd, j):
        out = out * abar_coeff(rd, l, j, frame)
    return out / delta_minus(rd, j, frame)


def zero_locus_ratio(rd, j):
    """Ratio of the regularized projection coefficient to the product of
    splitting factors; the theory says it is a monomial times a nonzero
    constant."""
    den = RF_ONE
    for i in range(1, j):
        den = den * phi(rd, i, j)
    return regularized_cj(rd, j) / den


def ratio_is_monomial(rf):
    """True when rf is a weight monomial times a nonzero q-Laurent factor,
    i.e. a function of the weight with no zeros at all."""
    num, den = rf.num, rf.den
    if not den.is_one():
        num = num.exact_div(den)
        if num is None:
            return False
    if num.is_zero():
        return False
    return len({m[1] for m in num.terms}) == 1


@dataclass
class DecompositionReport:
    family: str
    rank: int
    weight: object
    entries: list = field(default_factory=list)   # (i, j, phi string, is zero)
    witnesses: list = field(default_factory=list)
    x_coincidences: list = field(default_factory=list)
    verdict: bool = True


def direct_sum_report(rd, wspec):
    """Evaluate all splitting factors at a concrete weight and decide
    whether V (x) M_lambda splits as the direct sum of the Verma layers."""
    rep = DecompositionReport(rd.family, rd.n, wspec)
    for j in range(2, rd.N + 1):
        for i in range(1, j):
            val = phi(rd, i, j).evaluate(wspec)
            zero = val.is_zero()
            rep.entries.append((i, j, str(val), zero))
            if zero:
                rep.witnesses.append((i, j))
            xratio = q_form(rd.xi(i, j), 2).evaluate(wspec)
            if xratio.is_one():
                rep.x_coincidences.append((i, j))
    rep.verdict = not rep.witnesses
    return rep
