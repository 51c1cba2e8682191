"""Entries of the reduced Shapovalov inverse, their natural regularization,
the extra orthogonal divisors, and the singular vectors of V (x) M_lambda.

Coefficients live in the weight-monomial realization y_l = q^(-2 eta_{lj});
an alternative monomial frame можно be supplied to build the same expressions
in other variables (used by the duality cross-check of the raising side).
"""

from __future__ import annotations

from .freealg import FreeElt, composite_f, composite_route_product, principal_word
from .rootdata import q_form
from .scalars import (
    GR_ONE, LP_ONE, LaurentPoly, MONO_ONE, RF_ONE, RF_ZERO, RatFn,
    q_minus_qbar,
)
from .verma import TensorVec, VermaVec, act_tensor_e, is_zero_verma


def prec_nodes(rd, j):
    return [l for l in range(1, j) if rd.precedes(l, j)]


def standard_frame(rd, j):
    """Monomial realization y_l = q^(-2 eta_{lj}) of the coefficient ring."""

    def y(l):
        return q_form(rd.eta(l, j), -2)

    return y


def a_coeff(rd, i, j, frame=None):
    """Cartan coefficient (q - qbar)/(y_i - 1) of the route sums."""
    y = (frame or standard_frame(rd, j))(i)
    return RatFn(q_minus_qbar()) / (y - RF_ONE)


def abar_coeff(rd, i, j, frame=None):
    y = (frame or standard_frame(rd, j))(i)
    return (y - RF_ONE) / RatFn(q_minus_qbar())


def fhat(rd, i, j, frame=None):
    """Reduced Shapovalov inverse entry: route sum of composite products
    against products of Cartan coefficients."""
    if i == j:
        return FreeElt.unit()
    if not rd.precedes(i, j):
        return FreeElt.zero()
    out = FreeElt.zero()
    for route in rd.routes(i, j):
        coeff = a_coeff(rd, i, j, frame)
        for m in route:
            coeff = coeff * a_coeff(rd, m, j, frame)
        out = out + composite_route_product(rd, i, route, j).scale(coeff)
    return out


class WeightedElt:
    """A lowering element with weight-polynomial coefficients, kept both as
    an expanded word sum and as a route-indexed term list."""

    __slots__ = ("i", "j", "route_terms", "element")

    def __init__(self, i, j, route_terms, element):
        self.i = i
        self.j = j
        self.route_terms = route_terms
        self.element = element

    def __repr__(self):
        return f"<WeightedElt ({self.i},{self.j}) {len(self.element.terms)} words>"


def clear_nodes(rd, i, j):
    """Nodes whose Cartan coefficients can occur in the (i, j) route sum:
    i itself and everything strictly between i and j in the order."""
    return [i] + [m for m in range(i + 1, j)
                  if rd.precedes(i, m) and rd.precedes(m, j)]


def fcheck(rd, i, j, frame=None, clear_all=False):
    """Naturally regularized entry: the route sum multiplied by the common
    denominator of its Cartan coefficients, leaving every coefficient free
    of weight-variable denominators (asserted).

    With clear_all=True the product runs over all order-predecessors of j
    instead (the normalization matched by the raising-side duality)."""
    pred = prec_nodes(rd, j) if clear_all else clear_nodes(rd, i, j)
    if i == j:
        coeff = RF_ONE
        for l in (prec_nodes(rd, j) if clear_all else []):
            coeff = coeff * abar_coeff(rd, l, j, frame)
        return WeightedElt(i, j, [((), coeff)], FreeElt.unit().scale(coeff))
    if not rd.precedes(i, j):
        return WeightedElt(i, j, [], FreeElt.zero())
    route_terms = []
    out = FreeElt.zero()
    for route in rd.routes(i, j):
        used = {i, *route}
        coeff = RF_ONE
        for l in pred:
            if l not in used:
                coeff = coeff * abar_coeff(rd, l, j, frame)
        route_terms.append((route, coeff))
        out = out + composite_route_product(rd, i, route, j).scale(coeff)
    for w, c in out.terms.items():
        if not c.t_free_den():
            raise ArithmeticError(f"regularization left a weight denominator at {w}")
    return WeightedElt(i, j, route_terms, out)


def _word_counts(rd, word):
    counts = [0] * len(rd.alphas)
    for k in word:
        counts[k - 1] += 1
    return tuple(counts)


def _sub_multisets(counts):
    if not counts:
        yield ()
        return
    head, rest = counts[0], counts[1:]
    for tail in _sub_multisets(rest):
        for c in range(head + 1):
            yield (c,) + tail


def serre_slice_rows(rd, counts):
    """Free-word spanning vectors of the Serre ideal's slice at the weight
    with the given letter multiplicities: all products u * s * v with s a
    Serre relator and u, v words over the complementary letters."""
    key = ("serre-rows", counts)
    cache = rd._caches
    if key in cache:
        return cache[key]
    from .freealg import serre_element, serre_pairs
    from .verma import multiset_perms
    rows = []
    for k, l in serre_pairs(rd):
        s = serre_element(rd, k, l)
        scounts = _word_counts(rd, next(iter(s.terms)))
        rem = tuple(c - sc for c, sc in zip(counts, scounts))
        if any(c < 0 for c in rem):
            continue
        for ucounts in _sub_multisets(rem):
            vcounts = tuple(r - u for r, u in zip(rem, ucounts))
            for u in multiset_perms(ucounts):
                for v in multiset_perms(vcounts):
                    rows.append({u + w + v: c for w, c in s.terms.items()})
    cache[key] = rows
    return rows


def serre_slice_echelon(rd, counts):
    """Echelonized Serre slice; reduction modulo it is exact rewriting into
    the quotient algebra."""
    key = ("serre-slice", counts)
    cache = rd._caches
    if key in cache:
        return cache[key]
    from .verma import _Echelon
    ech = _Echelon()
    for vec in serre_slice_rows(rd, counts):
        ech.insert(vec)
    cache[key] = ech
    return ech


def _t_buckets(c):
    """Split a rational function with weight-free denominator into pieces
    c = sum over t-monomials of (pure q part) * t-monomial."""
    if not c.t_free_den():
        raise ArithmeticError("bucket split needs a weight-free denominator")
    buckets = {}
    for (q2, t2), coef in c.num.terms.items():
        buckets.setdefault(t2, {})[(q2, ())] = coef
    from .scalars import LaurentPoly
    return {t2: RatFn(LaurentPoly(terms), c.den) for t2, terms in buckets.items()}


def reduce_over_words(rd, elt, basis=None):
    """Rewrite a homogeneous lowering element over a candidate family,
    modulo the Serre slice.  The elimination runs entirely over pure-q
    entries (the element is split by weight monomials first), which keeps
    the exact arithmetic small.  Returns a list of (basis element,
    coefficient) or None when the family does not span the element."""
    if elt.is_zero_repr():
        return []
    words = sorted(elt.terms, key=lambda w: (len(w), w))
    counts = _word_counts(rd, words[0])
    cands = basis if basis is not None else [FreeElt.word(w) for w in words]
    for b in cands:
        if b.has_t_coeffs():
            raise ArithmeticError("candidate basis must have pure-q coefficients")
    # candidates are reduced modulo the cached Serre echelon first, so the
    # surviving rows are independent in the quotient algebra and the solved
    # coefficients are true algebra coordinates
    ech = serre_slice_echelon(rd, counts)
    rows = []
    for idx, b in enumerate(cands):
        v = ech.reduce(b.terms)
        combo = {idx: RF_ONE}
        for piv, rv, rc in rows:
            c = v.get(piv)
            if c is None or c.is_zero():
                continue
            for k, cc in rv.items():
                s = v.get(k)
                s = -(c * cc) if s is None else s - c * cc
                if s.is_zero():
                    v.pop(k, None)
                else:
                    v[k] = s
            for k, cc in rc.items():
                s = combo.get(k)
                s = -(c * cc) if s is None else s - c * cc
                if s.is_zero():
                    combo.pop(k, None)
                else:
                    combo[k] = s
        v = {k: c for k, c in v.items() if not c.is_zero()}
        if not v:
            continue
        piv = min(v)
        inv = v[piv].inv()
        rows.append((piv, {k: c * inv for k, c in v.items()},
                     {k: c * inv for k, c in combo.items()}))
    rows.sort(key=lambda r: r[0])
    # bucket the target by weight monomial and solve each pure-q piece
    buckets = {}
    for w, c in elt.terms.items():
        for t2, piece in _t_buckets(c).items():
            buckets.setdefault(t2, {})[w] = piece
    total = {}
    for t2, target in sorted(buckets.items()):
        combo = {}
        t = ech.reduce(target)
        for piv, rv, rc in rows:
            c = t.get(piv)
            if c is None or c.is_zero():
                continue
            for k, cc in rv.items():
                s = t.get(k)
                s = -(c * cc) if s is None else s - c * cc
                if s.is_zero():
                    t.pop(k, None)
                else:
                    t[k] = s
            for k, cc in rc.items():
                s = combo.get(k)
                s = (c * cc) if s is None else s + c * cc
                if s.is_zero():
                    combo.pop(k, None)
                else:
                    combo[k] = s
        if any(not c.is_zero() for c in t.values()):
            return None
        ymono = RatFn.from_mono((0, t2))
        for idx, c in combo.items():
            s = total.get(idx)
            add = ymono * c
            s = add if s is None else s + add
            total[idx] = s
    return [(cands[idx], c) for idx, c in sorted(total.items()) if not c.is_zero()]


def divide_in_algebra(rd, elt, d, basis=None):
    """Quotient elt/d in the lowering algebra: coordinates are divided
    exactly (weight denominators must clear) and a polynomial-coefficient
    free representative is rebuilt."""
    if d.is_one():
        return elt
    terms = reduce_over_words(rd, elt, basis)
    if terms is None:
        raise ArithmeticError("element does not lie in the candidate span")
    out = FreeElt.zero()
    for b, c in terms:
        r = c / d
        if not r.t_free_den():
            raise ArithmeticError("coefficient is not divisible in the algebra")
        out = out + b.scale(r)
    return out


def delta_minus(rd, j, frame=None):
    """Extra orthogonal divisor of the lowering generators."""
    fam = rd.family
    if fam in ("A", "C"):
        return RF_ONE
    sprime = rd.prime(rd.s_boundary)
    if j < sprime:
        return RF_ONE
    frame = frame or standard_frame(rd, j)
    if fam == "D":
        return (frame(rd.prime(j)) - RF_ONE) / RatFn(q_minus_qbar())
    # so(2n+1): (y_{j'}^{1/2} + 1)/(q + 1) with y_{j'}^{1/2} = q y_*
    half = RatFn.qpow(2) * frame(rd.star)
    den = LaurentPoly({(2, ()): GR_ONE, MONO_ONE: GR_ONE})
    return (half + RF_ONE) / RatFn(den)


def gen_minus(rd, j, frame=None):
    """Regularized lowering generator: fcheck(1, j) / delta_minus(j)."""
    lo = 2
    hi = rd.N if rd.family in ("A", "C") else rd.N - 1
    if not lo <= j <= hi:
        raise ValueError(f"lowering generator index j={j} out of range [{lo},{hi}]")
    return quotient_minus(rd, 1, j, frame)


def quotient_minus(rd, i, j, frame=None):
    fc = fcheck(rd, i, j, frame)
    dm = delta_minus(rd, j, frame)
    if dm.is_one():
        return WeightedElt(i, j, fc.route_terms, fc.element)
    cands = [b for _, b in display_basis(rd, i, j)]
    cands += [FreeElt.word(w) for w in sorted(fc.element.terms, key=lambda w: (len(w), w))]
    elt = divide_in_algebra(rd, fc.element, dm, basis=cands)
    return WeightedElt(i, j, fc.route_terms, elt)


def singular_vector(rd, j, cleared=False):
    """F_j = sum_i w_i (x) fhat_{ij} v, a singular vector at symbolic weight.

    With cleared=True all components are scaled by the full product of
    inverse Cartan coefficients (a nonzero rational function), leaving
    polynomial coefficients; singularity is unaffected.
    """
    comps = {}
    for i in range(1, j + 1):
        x = fcheck(rd, i, j).element if cleared else fhat(rd, i, j)
        if not x.is_zero_repr():
            comps[i] = VermaVec(dict(x.terms))
    return TensorVec(comps)


def check_singular(rd, x):
    """True when every simple raising generator annihilates x (symbolic)."""
    for k in range(1, len(rd.alphas) + 1):
        y = act_tensor_e(rd, k, x)
        for comp in y.comps.values():
            if not is_zero_verma(rd, comp, symbolic=True):
                return False
    return True


def psi_coefficient(rd, i, j, elt=None):
    """Coefficient of the principal word in the regularized entry."""
    if elt is None:
        elt = fcheck(rd, i, j).element
    return elt.coeff(principal_word(rd, i, j))


# ---------------------------------------------------------------------------
# Expressing elements over the composite display basis
# ---------------------------------------------------------------------------

def express_in_basis(vectors, target):
    """Exact coordinates of target in the span of the given word-dicts,
    or None; dependent vectors are skipped deterministically."""
    rows = []
    for idx, vec in enumerate(vectors):
        v = dict(vec)
        combo = {idx: RF_ONE}
        for piv, rv, rc in rows:
            c = v.get(piv)
            if c is None or c.is_zero():
                continue
            for k, cc in rv.items():
                s = v.get(k)
                s = -(c * cc) if s is None else s - c * cc
                if s.is_zero():
                    v.pop(k, None)
                else:
                    v[k] = s
            for k, cc in rc.items():
                s = combo.get(k)
                s = -(c * cc) if s is None else s - c * cc
                if s.is_zero():
                    combo.pop(k, None)
                else:
                    combo[k] = s
        v = {k: c for k, c in v.items() if not c.is_zero()}
        if not v:
            continue
        piv = min(v)
        inv = v[piv].inv()
        rows.append((piv, {k: c * inv for k, c in v.items()},
                     {k: c * inv for k, c in combo.items()}))
    t = dict(target)
    combo = {}
    for piv, rv, rc in rows:
        c = t.get(piv)
        if c is None or c.is_zero():
            continue
        for k, cc in rv.items():
            s = t.get(k)
            s = -(c * cc) if s is None else s - c * cc
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        for k, cc in rc.items():
            s = combo.get(k)
            s = (c * cc) if s is None else s + c * cc
            if s.is_zero():
                combo.pop(k, None)
            else:
                combo[k] = s
    if any(not c.is_zero() for c in t.values()):
        return None
    return combo


def display_basis(rd, i, j):
    """Candidate basis f_{im} psi^{mj} for presenting weight-(i,j) elements,
    m descending from j to i."""
    cands = []
    for m in range(j, i - 1, -1):
        if m != i and not (rd.precedes(i, m) or m == j):
            continue
        if m == j:
            b = composite_f(rd, i, j)
        else:
            if not rd.precedes(m, j):
                continue
            psi = principal_word(rd, m, j)
            b = composite_f(rd, i, m) * FreeElt.word(psi)
        if not b.is_zero_repr():
            cands.append((m, b))
    return cands


def grouped_terms(rd, i, j, elt):
    """Present elt over the display basis in the algebra: a list of
    (node, basis elt, coeff), or None when the basis does not span it."""
    if elt.is_zero_repr():
        return []
    cands = display_basis(rd, i, j)
    terms = reduce_over_words(rd, elt, [b for _, b in cands])
    if terms is None:
        return None
    by_id = {id(b): m for m, b in cands}
    return [(by_id[id(b)], b, c) for b, c in terms]
