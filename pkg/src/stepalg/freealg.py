"""Free-word model of the raising/lowering subalgebras: linear combinations
of words in Chevalley generators with rational-function coefficients.

No canonical basis is imposed; equality of elements is decided elsewhere by
the Verma pairing oracle.  Composite root vectors follow the nested
modified-commutator scheme of the natural representation, family by family.
"""

from __future__ import annotations

from .scalars import GR_MINUS_ONE, GR_ONE, RF_ONE, RatFn, qint_scaled, qbinom_scaled

LOWER = "f"
RAISE = "e"


class FreeElt:
    """Finite sum of same-sign generator words with RatFn coefficients."""

    __slots__ = ("sign", "terms")

    def __init__(self, sign, terms=None):
        self.sign = sign
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero(sign=LOWER):
        return FreeElt(sign)

    @staticmethod
    def unit(sign=LOWER):
        return FreeElt(sign, {(): RF_ONE})

    @staticmethod
    def gen(k, sign=LOWER):
        return FreeElt(sign, {(k,): RF_ONE})

    @staticmethod
    def word(letters, sign=LOWER, coeff=RF_ONE):
        return FreeElt(sign, {tuple(letters): coeff})

    def is_zero_repr(self):
        """True when the stored dictionary is empty (free-word zero; the
        algebra-level zero test lives in the verma module)."""
        return not self.terms

    def __add__(self, other):
        if self.sign != other.sign:
            raise ValueError("mixed raising/lowering signs")
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        return FreeElt(self.sign, t)

    def __neg__(self):
        return FreeElt(self.sign, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.sign != other.sign:
            raise ValueError("mixed raising/lowering signs")
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = t.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = s
        return FreeElt(self.sign, t)

    def scale(self, c):
        if c.is_zero():
            return FreeElt(self.sign)
        if c.is_one():
            return self
        return FreeElt(self.sign, {w: cc * c for w, cc in self.terms.items()})

    def coeff(self, word):
        from .scalars import RF_ZERO
        return self.terms.get(tuple(word), RF_ZERO)

    def same_terms(self, other):
        """Word-by-word coefficient equality of the free representations."""
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[w] for w, c in self.terms.items())

    def split_by_weight(self, rd):
        """Group terms by total weight (sum of letter roots)."""
        out = {}
        for w, c in self.terms.items():
            key = rd.weight_of_word(w)
            out.setdefault(key, {})[w] = c
        return {k: FreeElt(self.sign, t) for k, t in out.items()}

    def has_t_coeffs(self):
        return any(c.num.has_t() or c.den.has_t() for c in self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "<FreeElt 0>"
        ws = sorted(self.terms)[:4]
        body = ", ".join("".join(f"{self.sign}{k}" for k in w) or "1" for w in ws)
        return f"<FreeElt {len(self.terms)} words: {body}...>"


def qcomm(x, y, a):
    """Modified commutator [x, y]_a = x y - a y x."""
    return x * y - (y * x).scale(a)


def omega(x):
    """Algebra automorphism swapping e and f letterwise."""
    return FreeElt(RAISE if x.sign == LOWER else LOWER, dict(x.terms))


def tau(x):
    """Anti-automorphism fixing the Chevalley generators: reverses words."""
    if x.sign != LOWER:
        raise ValueError("tau is defined on the lowering subalgebra")
    t = {}
    for w, c in x.terms.items():
        rw = w[::-1]
        s = t.get(rw)
        s = c if s is None else s + c
        if not s.is_zero():
            t[rw] = s
        else:
            t.pop(rw, None)
    return FreeElt(LOWER, t)


# ---------------------------------------------------------------------------
# Composite root vectors of the natural representation
# ---------------------------------------------------------------------------

_QBAR = RatFn.qpow(-2)


def _qbar_pow(k):
    return RatFn.qpow(-2 * k)


def composite_f(rd, i, j):
    """Lowering root vector f_{ij} attached to the node pair (i, j)."""
    key = ("fij", i, j)
    cache = rd._caches
    if key in cache:
        return cache[key]
    out = _build_f(rd, i, j)
    cache[key] = out
    return out


def _build_f(rd, i, j):
    if i == j:
        return FreeElt.unit()
    if i > j:
        return FreeElt.zero()
    fam, n, N = rd.family, rd.n, rd.N

    def F(a, b):
        return composite_f(rd, a, b)

    def chain(a, b):
        # [f_{label(b-1)}, ... [f_{label(a+1)}, f_{label(a)}]_qbar ...]_qbar
        out = FreeElt.gen(rd.arc_label(a, a + 1))
        for m in range(a + 1, b):
            out = qcomm(FreeElt.gen(rd.arc_label(m, m + 1)), out, _QBAR)
        return out

    def mirror(a, b):
        # [ ... [f_{label(b-1)}, ...]..., f_{label(a)}]_qbar, nested leftward
        out = FreeElt.gen(rd.arc_label(b - 1, b))
        for m in range(b - 2, a - 1, -1):
            out = qcomm(out, FreeElt.gen(rd.arc_label(m, m + 1)), _QBAR)
        return out

    if fam == "A":
        return chain(i, j)

    if fam == "B":
        top = n + 1  # the middle node *
        if j <= top:
            return chain(i, j)
        if i >= top:
            return mirror(i, j)
        if i == n and j == n + 2:
            # f_{nn'} = (q-1) f_n^2
            fn = FreeElt.gen(n)
            return (fn * fn).scale(RatFn.qpow(2) - RF_ONE)
        jj = rd.prime(j)
        d = 1 if i == jj else 0
        out = qcomm(F(top, j), F(i, top), _qbar_pow(d))
        return out.scale(RatFn.qpow(2 * d)) if d else out

    if fam == "C":
        if j <= n:
            return chain(i, j)
        if i >= n + 1:
            return mirror(i, j)
        if j == n + 1:
            if i == n:
                return FreeElt.gen(n).scale(qint_scaled(2, 2))  # [2]_q f_n
            return qcomm(FreeElt.gen(n), F(i, n), _qbar_pow(2))
        if i == n:
            return qcomm(F(n + 1, j), FreeElt.gen(n), _qbar_pow(2))
        jj = rd.prime(j)
        d = 1 if i == jj else 0
        out = qcomm(F(n, j), F(i, n), _qbar_pow(1 + d))
        return out.scale(RatFn.qpow(2 * d)) if d else out

    # family D
    if j <= n:
        return chain(i, j)
    if i >= n + 1:
        return mirror(i, j)
    if j == n + 1:
        if i == n:
            return FreeElt.zero()  # f_{nn'} = 0
        if i == n - 1:
            return FreeElt.gen(n)
        return qcomm(FreeElt.gen(n), F(i, n - 1), _QBAR)
    if i == n:
        if j == n + 2:
            return FreeElt.gen(n)
        return qcomm(F(n + 2, j), FreeElt.gen(n), _QBAR)
    jj = rd.prime(j)
    d = 1 if i == jj else 0
    out = qcomm(F(n, j), F(i, n), _qbar_pow(1 + d))
    return out.scale(RatFn.qpow(2 * d)) if d else out


def composite_route_product(rd, i, route, j):
    """Product f_{i,m1} f_{m1,m2} ... f_{mk,j} along a route."""
    nodes = (i,) + tuple(route) + (j,)
    out = composite_f(rd, nodes[0], nodes[1])
    for a, b in zip(nodes[1:], nodes[2:]):
        out = out * composite_f(rd, a, b)
    return out


def principal_path(rd, i, j):
    """Lexicographically least arc path from i to j."""
    paths = rd.paths(i, j)
    if not paths:
        raise ValueError(f"{i} does not precede {j}")
    return min(paths)


def principal_word(rd, i, j):
    """Principal monomial: arc labels read along the path from i to j."""
    path = principal_path(rd, i, j)
    return tuple(rd.arc_label(a, b) for a, b in zip(path, path[1:]))


def serre_element(rd, k, l, sign=LOWER):
    """q-Serre relator for the ordered pair of distinct simple roots (k, l)."""
    if k == l:
        raise ValueError("Serre relation needs distinct roots")
    a = rd.cartan_a(k, l)
    m = 1 - a
    d2 = rd.alpha_norm2[k - 1]
    out = FreeElt.zero(sign)
    for tdx in range(m + 1):
        coeff = qbinom_scaled(m, tdx, d2)
        if tdx % 2:
            coeff = coeff.scale(GR_MINUS_ONE)
        word = (k,) * (m - tdx) + (l,) + (k,) * tdx
        out = out + FreeElt.word(word, sign, coeff)
    return out


def serre_pairs(rd):
    """All ordered pairs of distinct simple root indices."""
    n = len(rd.alphas)
    return [(k, l) for k in range(1, n + 1) for l in range(1, n + 1) if k != l]
