"""Verma module with symbolic highest weight, the coproduct action on the
tensor product with the natural module, and the pairing-based zero test.

A VermaVec stores free lowering words applied to the highest vector; raising
generators act by commuting through the word, which realizes the Shapovalov
pairing.  At symbolic weight the module is faithful on the lowering
subalgebra, so pairing against all raising words of matching weight decides
zero exactly.  For elements with weight-independent coefficients the same
test may be run at a concrete deeply dominant weight: no factor of the
Shapovalov determinant can vanish there for the bounded weights involved,
which keeps the test exact while the coefficients stay one-variable.
"""

from __future__ import annotations

from .scalars import (
    GR_ONE, LP_ONE, LaurentPoly, RF_ONE, RF_ZERO, RatFn, mono, q_minus_qbar,
)


class VermaVec:
    """Element of the Verma module: free lowering words applied to the
    highest vector, with RatFn coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero():
        return VermaVec()

    @staticmethod
    def vacuum():
        return VermaVec({(): RF_ONE})

    @staticmethod
    def from_free(x):
        if x.sign != "f":
            raise ValueError("only lowering elements act freely")
        return VermaVec(dict(x.terms))

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        return VermaVec(t)

    def __neg__(self):
        return VermaVec({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c.is_zero():
            return VermaVec()
        if c.is_one():
            return self
        return VermaVec({w: cc * c for w, cc in self.terms.items()})

    def is_free_zero(self):
        return not self.terms

    def coeff(self, word):
        return self.terms.get(tuple(word), RF_ZERO)

    def has_t_coeffs(self):
        return any(c.num.has_t() or c.den.has_t() for c in self.terms.values())

    def split_by_weight(self, rd):
        out = {}
        for w, c in self.terms.items():
            out.setdefault(rd.weight_of_word(w), {})[w] = c
        return {k: VermaVec(t) for k, t in out.items()}

    def __repr__(self):
        return f"<VermaVec {len(self.terms)} words>"


# ---------------------------------------------------------------------------
# Generator actions
# ---------------------------------------------------------------------------

def act_f(k, v):
    """Left action of f_k: prepend the letter."""
    return VermaVec({(k,) + w: c for w, c in v.terms.items()})


def act_word_f(word, v):
    for k in reversed(word):
        v = act_f(k, v)
    return v


def _qh_mono(rd, k, word, sign, spec):
    """Monomial q^(sign*(alpha_k, lambda - wt(word))) with lambda symbolic,
    or its value at the concrete integer weight `spec`."""
    ak = rd.alphas[k - 1]
    drop = rd.ip(ak, rd.weight_of_word(word))
    if spec is None:
        return mono(-2 * sign * drop, tuple(2 * sign * a for a in ak))
    return (2 * sign * (rd.ip(ak, spec) - drop), ())


def act_qh(rd, k, v, sign=1, spec=None):
    """Action of q^(sign * h_{alpha_k})."""
    t = {}
    for w, c in v.terms.items():
        t[w] = c * RatFn.from_mono(_qh_mono(rd, k, w, sign, spec))
    return VermaVec(t)


def cartan_scalar(rd, k, word, spec=None):
    """Value of [h_{alpha_k}] on the weight lambda - wt(word): the scalar
    produced when e_k meets f_k.  The short root of so(2n+1) uses the
    rescaled pairing with denominator q - qbar."""
    num = LaurentPoly({_qh_mono(rd, k, word, 1, spec): GR_ONE})
    num = num - LaurentPoly({_qh_mono(rd, k, word, -1, spec): GR_ONE})
    d2 = rd.alpha_norm2[k - 1]
    if rd.family == "B" and k == rd.n:
        d2 = 2
    from .scalars import GR_MINUS_ONE
    den = LaurentPoly({(d2, ()): GR_ONE, (-d2, ()): GR_MINUS_ONE})
    return RatFn(num, den)


def _act_e_word(rd, k, word, spec):
    """Expansion of e_k applied to (word)v as [(word', coeff)], cached."""
    key = ("acte", k, word, spec)
    cache = rd._caches
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not word:
        out = ()
    else:
        l, rest = word[0], word[1:]
        out = [((l,) + w, c) for w, c in _act_e_word(rd, k, rest, spec)]
        if l == k:
            out.append((rest, cartan_scalar(rd, k, rest, spec)))
        out = tuple(out)
    cache[key] = out
    return out


def act_e(rd, k, v, spec=None):
    """Action of e_k, commuting rightward through each word."""
    t = {}
    for w, c in v.terms.items():
        for w2, c2 in _act_e_word(rd, k, w, spec):
            cc = c * c2
            s = t.get(w2)
            s = cc if s is None else s + cc
            if s.is_zero():
                t.pop(w2, None)
            else:
                t[w2] = s
    return VermaVec(t)


def pair(rd, eword, v, spec=None):
    """Coefficient of the highest vector in (e-word) v."""
    for k in reversed(eword):
        v = act_e(rd, k, v, spec)
        if not v.terms:
            return RF_ZERO
    return v.terms.get((), RF_ZERO)


def act_raising_elt(rd, x, v, spec=None):
    """Apply a raising FreeElt to a Verma vector."""
    if x.sign != "e":
        raise ValueError("raising element expected")
    out = VermaVec()
    for w, c in x.terms.items():
        cur = v
        for k in reversed(w):
            cur = act_e(rd, k, cur, spec)
            if not cur.terms:
                break
        else:
            out = out + cur.scale(c)
    return out


# ---------------------------------------------------------------------------
# Zero testing
# ---------------------------------------------------------------------------

def dominant_spec(rd):
    """Deeply dominant integer weight: coordinate gaps of 1000 dwarf every
    height correction, so no Shapovalov factor vanishes at desk scale."""
    return tuple(1000 * (rd.nvars - i) + 1000 for i in range(rd.nvars))


def _pair_words(rd, ew, fw, spec):
    """Shapovalov pairing of a raising word against a lowering word,
    memoized globally so zero tests share all subproblems."""
    if not ew:
        return RF_ONE if not fw else RF_ZERO
    if len(ew) != len(fw):
        return RF_ZERO
    key = ("gram", ew, fw, spec)
    cache = rd._caches
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = RF_ZERO
    head = ew[:-1]
    for w2, c in _act_e_word(rd, ew[-1], fw, spec):
        g = _pair_words(rd, head, w2, spec)
        if not g.is_zero():
            out = out + c * g
    cache[key] = out
    return out


def _is_zero_component(rd, v, spec):
    if not v.terms:
        return True
    first = next(iter(v.terms))
    if not first:
        return all(c.is_zero() for c in v.terms.values())
    counts = [0] * len(rd.alphas)
    for k in first:
        counts[k - 1] += 1
    ewords = multiset_perms(tuple(counts))
    # try the reverses of the support words first: for nonzero elements one
    # of those pairings is usually already nonzero
    front = {w[::-1] for w in v.terms}
    ewords.sort(key=lambda w: w not in front)
    items = list(v.terms.items())
    for ew in ewords:
        s = RF_ZERO
        for fw, c in items:
            g = _pair_words(rd, ew, fw, spec)
            if not g.is_zero():
                s = s + c * g
        if not s.is_zero():
            return False
    return True


def is_zero_verma(rd, v, symbolic=None):
    """Exact zero test in the Verma module.

    Elements whose coefficients involve the weight variables are tested at
    symbolic weight; weight-free elements default to the concrete dominant
    weight, where the test is equally exact and much cheaper.
    """
    if symbolic is None:
        symbolic = v.has_t_coeffs()
    spec = None if symbolic else dominant_spec(rd)
    if not symbolic and spec is not None and v.has_t_coeffs():
        raise ValueError("concrete zero test needs weight-free coefficients")
    for comp in v.split_by_weight(rd).values():
        if not _is_zero_component(rd, comp, spec):
            return False
    return True


def is_zero(rd, x, symbolic=None):
    """Zero test for a lowering FreeElt via its action on the highest vector."""
    if x.sign != "f":
        raise ValueError("zero test is for lowering elements")
    return is_zero_verma(rd, VermaVec.from_free(x), symbolic)


# ---------------------------------------------------------------------------
# Tensor product with the natural module
# ---------------------------------------------------------------------------

class TensorVec:
    """Element of V (x) M_lambda: node index -> Verma component."""

    __slots__ = ("comps",)

    def __init__(self, comps=None):
        self.comps = {} if comps is None else comps

    @staticmethod
    def basis(i):
        return TensorVec({i: VermaVec.vacuum()})

    def __add__(self, other):
        t = dict(self.comps)
        for i, v in other.comps.items():
            s = t.get(i)
            s = v if s is None else s + v
            if s.is_free_zero():
                t.pop(i, None)
            else:
                t[i] = s
        return TensorVec(t)

    def __neg__(self):
        return TensorVec({i: -v for i, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorVec({i: v.scale(c) for i, v in self.comps.items()})

    def is_free_zero(self):
        return all(v.is_free_zero() for v in self.comps.values())

    def __repr__(self):
        return f"<TensorVec nodes {sorted(self.comps)}>"


def act_tensor_e(rd, k, x):
    """Coproduct action of e_k: e (x) q^h + 1 (x) e."""
    out = {}

    def put(i, vec):
        if vec.is_free_zero():
            return
        s = out.get(i)
        s = vec if s is None else s + vec
        if s.is_free_zero():
            out.pop(i, None)
        else:
            out[i] = s

    for m, v in x.comps.items():
        dst = rd.e_maps[k - 1].get(m)
        if dst is not None:
            put(dst, act_qh(rd, k, v, 1))
        put(m, act_e(rd, k, v))
    return TensorVec(out)


def act_tensor_f(rd, k, x):
    """Coproduct action of f_k: f (x) 1 + q^{-h} (x) f."""
    out = {}

    def put(i, vec):
        if vec.is_free_zero():
            return
        s = out.get(i)
        s = vec if s is None else s + vec
        if s.is_free_zero():
            out.pop(i, None)
        else:
            out[i] = s

    for m, v in x.comps.items():
        dst = rd.f_maps[k - 1].get(m)
        if dst is not None:
            put(dst, v)
        scal = RatFn.qpow(-2 * rd.ip(rd.alphas[k - 1], rd.eps[m - 1]))
        put(m, act_f(k, v).scale(scal))
    return TensorVec(out)


def act_tensor_qh(rd, k, x, sign=1):
    """Coproduct action of q^(sign*h_{alpha_k})."""
    out = {}
    for m, v in x.comps.items():
        scal = RatFn.qpow(2 * sign * rd.ip(rd.alphas[k - 1], rd.eps[m - 1]))
        out[m] = act_qh(rd, k, v, sign).scale(scal)
    return TensorVec(out)


def act_word_tensor(rd, word, x):
    for k in reversed(word):
        x = act_tensor_f(rd, k, x)
    return x


# ---------------------------------------------------------------------------
# Graded projection onto V_j / V_{j-1}
# ---------------------------------------------------------------------------

def multiset_perms(mults):
    """Distinct sequences with letter k appearing mults[k-1] times."""
    letters = [k + 1 for k, m in enumerate(mults) for _ in range(m)]

    def rec(remaining):
        if not remaining:
            yield ()
            return
        seen = set()
        for idx, l in enumerate(remaining):
            if l in seen:
                continue
            seen.add(l)
            for tail in rec(remaining[:idx] + remaining[idx + 1:]):
                yield (l,) + tail

    return list(rec(tuple(letters)))


def _flatten(x):
    return {(i, w): c for i, v in x.comps.items() for w, c in v.terms.items()}


class _Echelon:
    """Incremental exact row echelon over the rational function field.

    Every stored row has its pivot at its minimal key, so a single pass in
    ascending pivot order can never reintroduce an already cleared pivot;
    reduction to zero is therefore an exact membership test.  With
    jordan=True rows are also kept mutually reduced, which controls entry
    growth when the coefficients are dense rational functions."""

    def __init__(self, jordan=False):
        self.rows = []  # (pivot key, row dict with pivot coeff 1)
        self.jordan = jordan

    def reduce(self, vec):
        vec = dict(vec)
        for piv, row in self.rows:
            c = vec.get(piv)
            if c is None or c.is_zero():
                continue
            for key, rc in row.items():
                s = vec.get(key)
                s = -(c * rc) if s is None else s - c * rc
                if s.is_zero():
                    vec.pop(key, None)
                else:
                    vec[key] = s
        return vec

    def insert(self, vec):
        vec = self.reduce(vec)
        vec = {k: c for k, c in vec.items() if not c.is_zero()}
        if not vec:
            return False
        piv = min(vec)
        inv = vec[piv].inv()
        row = {k: c * inv for k, c in vec.items()}
        if self.jordan:
            for _, orow in self.rows:
                c = orow.get(piv)
                if c is None or c.is_zero():
                    continue
                for key, rc in row.items():
                    s = orow.get(key)
                    s = -(c * rc) if s is None else s - c * rc
                    if s.is_zero():
                        orow.pop(key, None)
                    else:
                        orow[key] = s
        self.rows.append((piv, row))
        self.rows.sort(key=lambda r: r[0])
        return True


def _span_echelon(rd, j):
    """Echelon basis of the weight-(lambda+eps_j) subspace of V_{j-1}."""
    key = ("span", j)
    cache = rd._caches
    if key in cache:
        return cache[key]
    ech = _Echelon(jordan=True)
    for l in range(1, j):
        mults = rd.simple_mults(rd.node_gap(l, j))
        if mults is None:
            continue
        for word in multiset_perms(mults):
            vec = act_word_tensor(rd, word, TensorVec.basis(l))
            ech.insert(_flatten(vec))
    cache[key] = ech
    return ech


def graded_project(rd, j, x):
    """Scalar C with x = C * (w_j (x) v) modulo V_{j-1}.

    Raises ValueError when x does not lie in V_j (plus the line through the
    generator) at the required weight.
    """
    ech = _span_echelon(rd, j)
    t_red = ech.reduce(_flatten(TensorVec.basis(j)))
    t_red = {k: c for k, c in t_red.items() if not c.is_zero()}
    if not t_red:
        raise ArithmeticError("generator fell into the lower filtration layer")
    x_red = ech.reduce(_flatten(x))
    x_red = {k: c for k, c in x_red.items() if not c.is_zero()}
    if not x_red:
        return RF_ZERO
    piv = min(t_red)
    c = x_red.get(piv)
    if c is None:
        raise ValueError("vector is not in V_j at this weight")
    C = c / t_red[piv]
    for key in set(t_red) | set(x_red):
        lhs = x_red.get(key, RF_ZERO)
        rhs = t_red.get(key, RF_ZERO) * C
        if not lhs == rhs:
            raise ValueError("vector is not in V_j at this weight")
    return C
