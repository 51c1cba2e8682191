"""Positive step-algebra generators: mixed raising/lowering sums with
Cartan coefficients standing rightmost, their natural regularization, the
extra orthogonal divisor, and the weight-shifted action on Verma vectors.
"""

from __future__ import annotations

from .freealg import FreeElt, composite_f, composite_route_product, omega, tau
from .rootdata import q_form, qnum_form
from .scalars import (
    GR_MINUS_ONE, GR_ONE, LaurentPoly, MONO_ONE, RF_ONE, RatFn, q_minus_qbar,
)
from .shapovalov import delta_minus, display_basis, divide_in_algebra, fcheck
from .verma import VermaVec, act_raising_elt, act_word_f


def d_coeff(rd, l, j):
    """Cartan coefficient q^(eta_l1 - eta_j1)/[eta_j1 - eta_l1]_q of the
    raising route sums; defined for j preceding l."""
    if not rd.precedes(j, l):
        raise ValueError(f"{j} does not precede {l}")
    num = q_form(rd.eta(l, 1) - rd.eta(j, 1))
    return num / qnum_form(rd.eta(j, 1) - rd.eta(l, 1))


def dbar_coeff(rd, l, j):
    """Inverse of d_coeff: (q^(2 eta_j1 - 2 eta_l1) - 1)/(q - qbar)."""
    num = q_form(rd.eta(j, 1) - rd.eta(l, 1), 2) - RF_ONE
    return num / RatFn(q_minus_qbar())


class MixedElt:
    """Sum over k of (lowering part) e_{k1} (Cartan coefficient), stored as
    a map k -> lowering FreeElt with the Cartan data folded into the word
    coefficients."""

    __slots__ = ("j", "terms")

    def __init__(self, j, terms):
        self.j = j
        self.terms = terms

    def __repr__(self):
        return f"<MixedElt j={self.j} k={sorted(self.terms)}>"


def _succ_nodes(rd, j):
    return [l for l in range(j + 1, rd.N + 1) if rd.precedes(j, l)]


def zhat_plus(rd, j):
    """Raising generator: e_{j1} plus the route sum over nodes above j."""
    if not 2 <= j <= rd.N:
        raise ValueError("raising generator needs j in [2, N]")
    terms = {j: FreeElt.unit()}
    for k in _succ_nodes(rd, j):
        sign = GR_MINUS_ONE if rd.dist(j, k) % 2 else GR_ONE
        head = q_form(rd.eta(j, 1) - rd.eta(k, 1)).scale(sign)
        acc = FreeElt.zero()
        for route in rd.routes(j, k):
            coeff = d_coeff(rd, k, j)
            for m in route:
                coeff = coeff * d_coeff(rd, m, j)
            acc = acc + composite_route_product(rd, j, route, k).scale(coeff)
        terms[k] = acc.scale(head)
    return MixedElt(j, terms)


def zcheck_plus(rd, j):
    """Natural regularization: all coefficients multiplied by the full
    product of inverse Cartan coefficients; weight denominators clear."""
    succ = _succ_nodes(rd, j)
    full = RF_ONE
    for l in succ:
        full = full * dbar_coeff(rd, l, j)
    terms = {j: FreeElt.unit().scale(full)}
    for k in succ:
        sign = GR_MINUS_ONE if rd.dist(j, k) % 2 else GR_ONE
        head = q_form(rd.eta(j, 1) - rd.eta(k, 1)).scale(sign)
        acc = FreeElt.zero()
        for route in rd.routes(j, k):
            used = {k, *route}
            coeff = head
            for l in succ:
                if l not in used:
                    coeff = coeff * dbar_coeff(rd, l, j)
            acc = acc + composite_route_product(rd, j, route, k).scale(coeff)
        for c in acc.terms.values():
            if not c.t_free_den():
                raise ArithmeticError("regularized raising coefficient kept a pole")
        terms[k] = acc
    return MixedElt(j, terms)


def z_lower(rd, j, k):
    """Proof-device lowering part: the (j,k) route sum against off-route
    inverse coefficients, with no sign or monomial head."""
    succ = _succ_nodes(rd, j)
    if k == j:
        coeff = RF_ONE
        for l in succ:
            coeff = coeff * dbar_coeff(rd, l, j)
        return FreeElt.unit().scale(coeff)
    acc = FreeElt.zero()
    for route in rd.routes(j, k):
        used = {k, *route}
        coeff = RF_ONE
        for l in succ:
            if l not in used:
                coeff = coeff * dbar_coeff(rd, l, j)
        acc = acc + composite_route_product(rd, j, route, k).scale(coeff)
    return acc


def delta_plus(rd, j):
    """Extra orthogonal divisor of the raising generators, trivial beyond
    the stable boundary and for gl/sp."""
    fam = rd.family
    if fam in ("A", "C") or j > rd.s_boundary:
        return RF_ONE
    if fam == "D":
        num = q_form(rd.eta(j, 1) - rd.eta(rd.prime(j), 1), 2) - RF_ONE
        return num / RatFn(q_minus_qbar())
    num = RatFn.qpow(2) * q_form(rd.eta(j, 1) - rd.eta(rd.star, 1), 2) + RF_ONE
    den = LaurentPoly({(2, ()): GR_ONE, MONO_ONE: GR_ONE})
    return num / RatFn(den)


def gen_plus(rd, j):
    """Regularized raising generator: zcheck divided by delta_plus, the
    division performed per raising column in the lowering algebra."""
    z = zcheck_plus(rd, j)
    dp = delta_plus(rd, j)
    if dp.is_one():
        return z
    out = {}
    for k, felt in z.terms.items():
        if felt.is_zero_repr():
            continue
        if k == j:
            c = felt.coeff(()) / dp
            if not c.t_free_den():
                raise ArithmeticError("head coefficient not divisible")
            out[k] = FreeElt.unit().scale(c)
            continue
        cands = [b for _, b in display_basis(rd, j, k)]
        cands += [FreeElt.word(w) for w in sorted(felt.terms, key=lambda w: (len(w), w))]
        out[k] = divide_in_algebra(rd, felt, dp, basis=cands)
    return MixedElt(j, out)


def apply_mixed(rd, z, v):
    """Act with a mixed element on a homogeneous Verma vector: Cartan
    coefficients are evaluated at the vector's weight (shifted in the weight
    variables, still symbolic), then the raising and lowering parts act."""
    if not v.terms:
        return VermaVec.zero()
    words = iter(v.terms)
    nu = rd.weight_of_word(next(words))
    for w in words:
        if rd.weight_of_word(w) != nu:
            raise ValueError("apply_mixed needs a weight-homogeneous vector")
    out = VermaVec.zero()
    for k, felt in z.terms.items():
        epart = omega(composite_f(rd, 1, k))
        moved = act_raising_elt(rd, epart, v)
        if not moved.terms:
            continue
        for w, c in felt.terms.items():
            out = out + act_word_f(w, moved).scale(c.shift_weight(nu))
    return out


def dual_frame(rd, j):
    """Monomial frame sending the lowering coefficient ring of column j'
    to the raising coefficients of row j: y_m -> q^(2 eta_j1 - 2 eta_m'1)."""

    def y(m):
        return q_form(rd.eta(j, 1) - rd.eta(rd.prime(m), 1), 2)

    return y


def tau_dual_pair(rd, j, k):
    """The two sides of the duality: tau of the lowering part of the
    regularized raising generator, and the fully-cleared Shapovalov entry
    of the flipped pair built in the dual monomial frame."""
    lhs = tau(z_lower(rd, j, k))
    rhs = fcheck(rd, rd.prime(k), rd.prime(j), frame=dual_frame(rd, j),
                 clear_all=True).element
    return lhs, rhs


def delta_dual_matches(rd, j):
    """delta_minus of column j' in the dual frame equals delta_plus of j."""
    return delta_minus(rd, rd.prime(j), frame=dual_frame(rd, j)) == delta_plus(rd, j)
