"""Exact scalar arithmetic: Laurent polynomials and rational functions in
q^(1/2) and the weight monomials t_1..t_n over Gaussian rationals.

All exponents are stored doubled (so integer arithmetic represents
half-integer powers).  A monomial is a pair ``(q2, t2)`` where ``q2`` is the
doubled exponent of q and ``t2`` is a tuple of doubled exponents of the t
variables with trailing zeros stripped.
"""

from __future__ import annotations

from fractions import Fraction


class PoleError(ArithmeticError):
    """A denominator vanished under a weight substitution."""

    def __init__(self, factor):
        super().__init__(f"pole: denominator vanishes: {factor}")
        self.factor = factor


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GaussRat:
    """A Gaussian rational re + im*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other):
        return GaussRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussRat(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        if not self.im and not other.im:
            return GaussRat(self.re * other.re)
        return GaussRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * other.inv()

    def __eq__(self, other):
        return isinstance(other, GaussRat) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRat({self.re!r},{self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    @staticmethod
    def parse(s):
        s = s.strip()
        if "i" not in s:
            return GaussRat(Fraction(s))
        body = s[:-2] if s.endswith("*i") else s[:-1]
        # split at the last +/- that is not part of a fraction sign
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "+-/":
                re_part, im_part = body[:pos], body[pos:].replace("+", "", 1)
                return GaussRat(Fraction(re_part), Fraction(im_part))
        return GaussRat(0, Fraction(body) if body not in ("", "+", "-") else Fraction(body + "1"))


GR_ZERO = GaussRat(0)
GR_ONE = GaussRat(1)
GR_MINUS_ONE = GaussRat(-1)
GR_I = GaussRat(0, 1)

_I_POWERS = (GR_ONE, GR_I, GR_MINUS_ONE, GaussRat(0, -1))


# ---------------------------------------------------------------------------
# Monomials: (q2, t2) tuples
# ---------------------------------------------------------------------------

MONO_ONE = (0, ())


def _strip(t):
    while t and t[-1] == 0:
        t = t[:-1]
    return t


def mono(q2=0, t2=()):
    return (q2, _strip(tuple(t2)))


def mono_mul(a, b):
    ta, tb = a[1], b[1]
    if not tb:
        return (a[0] + b[0], ta)
    if not ta:
        return (a[0] + b[0], tb)
    if len(ta) < len(tb):
        ta, tb = tb, ta
    t = list(ta)
    for i, e in enumerate(tb):
        t[i] += e
    return (a[0] + b[0], _strip(tuple(t)))


def mono_inv(a):
    return (-a[0], tuple(-e for e in a[1]))


def _exp_str(e2):
    return str(e2 // 2) if e2 % 2 == 0 else f"{e2}/2"


def mono_str(m):
    parts = []
    if m[0]:
        parts.append("q" if m[0] == 2 else f"q^{_exp_str(m[0])}")
    for i, e in enumerate(m[1]):
        if e:
            parts.append(f"t{i + 1}" if e == 2 else f"t{i + 1}^{_exp_str(e)}")
    return "*".join(parts) if parts else "1"


def _mono_print_key(m):
    return (m[0] + sum(m[1]), m[0], m[1])


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Sparse Laurent polynomial: dict monomial -> nonzero GaussRat."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero():
        return LaurentPoly({})

    @staticmethod
    def one():
        return LaurentPoly({MONO_ONE: GR_ONE})

    @staticmethod
    def const(c):
        return LaurentPoly({MONO_ONE: c}) if c else LaurentPoly({})

    @staticmethod
    def monomial(m, c=GR_ONE):
        return LaurentPoly({m: c}) if c else LaurentPoly({})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(MONO_ONE) == GR_ONE

    def is_monomial(self):
        return len(self.terms) == 1

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return LaurentPoly(t)

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly({})
        if len(a) > len(b):
            a, b = b, a
        t = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                c = ca * cb
                s = t.get(m)
                if s is None:
                    if c:
                        t[m] = c
                else:
                    s = s + c
                    if s:
                        t[m] = s
                    else:
                        del t[m]
        return LaurentPoly(t)

    def scale(self, c):
        if not c:
            return LaurentPoly({})
        if c == GR_ONE:
            return self
        return LaurentPoly({m: cc * c for m, cc in self.terms.items()})

    def mul_mono(self, m, c=GR_ONE):
        if not c:
            return LaurentPoly({})
        return LaurentPoly({mono_mul(mm, m): cc * c for mm, cc in self.terms.items()})

    def min_term(self):
        m = min(self.terms)
        return m, self.terms[m]

    def max_term(self):
        m = max(self.terms)
        return m, self.terms[m]

    def exact_div(self, other):
        """Exact quotient self/other, or None when not divisible.

        Shifts both operands to nonnegative exponents and runs graded-lex
        single-divisor division; a nonzero remainder step means no exact
        quotient exists.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return LaurentPoly({})
        if other.is_one():
            return self
        if len(other.terms) == 1:
            m, c = other.min_term()
            return self.mul_mono(mono_inv(m), c.inv())
        nv = max(max((len(m[1]) for m in self.terms), default=0),
                 max((len(m[1]) for m in other.terms), default=0))

        def vecs(p):
            return {(m[0],) + m[1] + (0,) * (nv - len(m[1])): c for m, c in p.terms.items()}

        fa, fb = vecs(self), vecs(other)
        shift_a = tuple(min(v[i] for v in fa) for i in range(nv + 1))
        shift_b = tuple(min(v[i] for v in fb) for i in range(nv + 1))
        # necessary condition: the divisor span fits inside the dividend span
        for i in range(nv + 1):
            if (max(v[i] for v in fa) - shift_a[i]
                    < max(v[i] for v in fb) - shift_b[i]):
                return None
        fa = {tuple(e - s for e, s in zip(v, shift_a)): c for v, c in fa.items()}
        fb = {tuple(e - s for e, s in zip(v, shift_b)): c for v, c in fb.items()}

        import heapq

        def heapkey(v):
            return (-sum(v), tuple(-e for e in v))

        lead_b = max(fb, key=lambda v: (sum(v), v))
        cb = fb[lead_b]
        heap = [heapkey(v) for v in fa]
        heapq.heapify(heap)
        quo = {}
        while fa:
            while heap:
                hk = heap[0]
                lead_a = tuple(-e for e in hk[1])
                if lead_a in fa:
                    break
                heapq.heappop(heap)
            tvec = tuple(e - f for e, f in zip(lead_a, lead_b))
            if any(e < 0 for e in tvec):
                return None
            cq = fa[lead_a] / cb
            quo[tvec] = cq
            for v, c in fb.items():
                w = tuple(e + f for e, f in zip(v, tvec))
                s = fa.get(w)
                if s is None:
                    fa[w] = -cq * c
                    heapq.heappush(heap, heapkey(w))
                else:
                    s = s - cq * c
                    if s:
                        fa[w] = s
                    else:
                        del fa[w]
        dshift = tuple(a - b for a, b in zip(shift_a, shift_b))
        out = {}
        for v, c in quo.items():
            w = tuple(e + s for e, s in zip(v, dshift))
            out[(w[0], _strip(w[1:]))] = c
        return LaurentPoly(out)

    def has_t(self):
        return any(m[1] for m in self.terms)

    def shift_weight(self, nu):
        """Substitute t_i -> t_i * q^(-nu_i) for integer coordinates nu."""
        t = {}
        for (q2, t2), c in self.terms.items():
            d = sum(n * e for n, e in zip(nu, t2))
            m = (q2 - d, t2)
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return LaurentPoly(t)

    def evaluate(self, spec):
        """Substitute t_i -> phase_i * q^(c_i) per a concrete WeightSpec."""
        t = {}
        for (q2, t2), c in self.terms.items():
            ip = 0
            qe = q2
            for i, e in enumerate(t2):
                if not e:
                    continue
                p, c2 = spec.coords[i]
                ip += p * e
                qe2 = c2 * e
                if qe2 % 2:
                    raise ValueError("substitution leaves a quarter-integer q power")
                qe += qe2 // 2
            if ip % 2:
                raise ValueError("phase substitution leaves a half power of i")
            cc = c * _I_POWERS[(ip // 2) % 4]
            m = (qe, ())
            s = t.get(m)
            if s is None:
                t[m] = cc
            else:
                s = s + cc
                if s:
                    t[m] = s
                else:
                    del t[m]
        return LaurentPoly(t)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_print_key):
            c = self.terms[m]
            ms = mono_str(m)
            if ms == "1":
                parts.append(str(c))
            elif c == GR_ONE:
                parts.append(ms)
            elif c == GR_MINUS_ONE:
                parts.append(f"-{ms}")
            else:
                cs = str(c)
                if "+" in cs[1:] or "-" in cs[1:]:
                    cs = f"({cs})"
                parts.append(f"{cs}*{ms}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"<LaurentPoly {self}>"


LP_ZERO = LaurentPoly.zero()
LP_ONE = LaurentPoly.one()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

_REDUCE_CAP = 20000
_QSPAN_CAP = 64


def _q_span(p):
    es = [m[0] for m in p.terms]
    return max(es) - min(es)


def _try_div(num, den):
    """Attempt num/den exactly, refusing when the quotient would be a long
    one-variable expansion (e.g. big q-numbers) or is unlikely to pay off."""
    if den.is_one():
        return num
    if len(num.terms) * len(den.terms) > _REDUCE_CAP:
        return None
    if not den.has_t():
        # pure-q denominators are compact; only reduce pure-q fractions
        # with a short quotient
        if num.has_t() or _q_span(num) - _q_span(den) > _QSPAN_CAP:
            return None
    return num.exact_div(den)


class RatFn:
    """Quotient of Laurent polynomials, normalized so the denominator's
    minimal monomial is 1 with unit coefficient.  Fractions are not reduced
    by gcd; equality uses cross multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = LP_ONE
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in RatFn")
        if num.is_zero():
            self.num, self.den = LP_ZERO, LP_ONE
            return
        if not den.is_one():
            m, c = den.min_term()
            if m != MONO_ONE or c != GR_ONE:
                ci = c.inv()
                mi = mono_inv(m)
                num = num.mul_mono(mi, ci)
                den = den.mul_mono(mi, ci)
            if not den.is_one():
                q = _try_div(num, den)
                if q is not None:
                    num, den = q, LP_ONE
        self.num, self.den = num, den

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero():
        return RF_ZERO

    @staticmethod
    def one():
        return RF_ONE

    @staticmethod
    def const(c):
        if not isinstance(c, GaussRat):
            c = GaussRat(c)
        return RatFn(LaurentPoly.const(c))

    @staticmethod
    def from_mono(m, c=GR_ONE):
        return RatFn(LaurentPoly.monomial(m, c))

    @staticmethod
    def qpow(e2):
        return RatFn(LaurentPoly.monomial((e2, ())))

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def t_free_den(self):
        return not self.den.has_t()

    def is_term(self):
        return self.den.is_one() and len(self.num.terms) <= 1

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        q = _try_div(other.den, self.den)
        if q is not None:
            return RatFn(self.num * q + other.num, other.den)
        q = _try_div(self.den, other.den)
        if q is not None:
            return RatFn(self.num + other.num * q, self.den)
        return RatFn(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return RF_ZERO
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            q = _try_div(n1, d2)
            if q is not None:
                n1, d2 = q, LP_ONE
        if not d1.is_one():
            q = _try_div(n2, d1)
            if q is not None:
                n2, d1 = q, LP_ONE
        return RatFn(n1 * n2, d1 * d2)

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverting zero RatFn")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def scale(self, c):
        return RatFn(self.num.scale(c), self.den)

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    # -- substitutions -------------------------------------------------------

    def evaluate(self, spec):
        den = self.den.evaluate(spec)
        if den.is_zero():
            raise PoleError(str(self.den))
        return RatFn(self.num.evaluate(spec), den)

    def shift_weight(self, nu):
        return RatFn(self.num.shift_weight(nu), self.den.shift_weight(nu))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        ns, ds = str(self.num), str(self.den)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if len(self.den.terms) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"<RatFn {self}>"


RF_ZERO = RatFn(LP_ZERO)
RF_ONE = RatFn(LP_ONE)


def ratfn_arith(a, b, op):
    """Field arithmetic dispatcher; division by zero raises ZeroDivisionError."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# q-numbers
# ---------------------------------------------------------------------------

def q_minus_qbar():
    return LaurentPoly({(2, ()): GR_ONE, (-2, ()): GR_MINUS_ONE})


def qnum_mono(m):
    """[z]_q realized from the monomial m = q^z: (m - 1/m)/(q - 1/q)."""
    mi = mono_inv(m)
    if m == mi:
        return RF_ZERO
    num = LaurentPoly({m: GR_ONE, mi: GR_MINUS_ONE})
    return RatFn(num, q_minus_qbar())


def qnum(z2):
    """[z]_q for a half-integer z given as the doubled value z2."""
    return qnum_mono((z2, ()))


def qint_scaled(z, d2):
    """[z]_{q_a} for integer z with q_a = q^(d2/2)."""
    if z == 0:
        return RF_ZERO
    num = LaurentPoly({(z * d2, ()): GR_ONE, (-z * d2, ()): GR_MINUS_ONE})
    den = LaurentPoly({(d2, ()): GR_ONE, (-d2, ()): GR_MINUS_ONE})
    return RatFn(num, den)


def qbinom_scaled(m, k, d2):
    """Gaussian binomial [m choose k]_{q_a} with q_a = q^(d2/2)."""
    if k < 0 or k > m:
        return RF_ZERO
    out = RF_ONE
    for t in range(1, k + 1):
        out = out * qint_scaled(m - k + t, d2) / qint_scaled(t, d2)
    return out


# ---------------------------------------------------------------------------
# Weight specifications
# ---------------------------------------------------------------------------

_PHASES = {"1": 0, "i": 1, "-1": 2, "-i": 3}
_PHASE_STR = {0: "1", 1: "i", 2: "-1", 3: "-i"}


class WeightSpec:
    """A concrete weight: per coordinate a phase i^p and a half-integer
    exponent c (stored doubled), meaning t_k -> i^p * q^c.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple((p % 4, c2) for p, c2 in coords)

    @staticmethod
    def from_halves(c2s, phases=None):
        phases = phases or [0] * len(c2s)
        return WeightSpec(list(zip(phases, c2s)))

    @staticmethod
    def parse(weight_str, phase_str=None):
        c2s = []
        for tok in weight_str.split(","):
            v = Fraction(tok.strip())
            d = 2 * v
            if d.denominator != 1:
                raise ValueError(f"weight coordinate {tok!r} is not a half-integer")
            c2s.append(int(d))
        phases = [0] * len(c2s)
        if phase_str:
            toks = [t.strip() for t in phase_str.split(",")]
            if len(toks) != len(c2s):
                raise ValueError("phase list length differs from weight length")
            try:
                phases = [_PHASES[t] for t in toks]
            except KeyError as e:
                raise ValueError(f"bad phase {e.args[0]!r}") from None
        return WeightSpec.from_halves(c2s, phases)

    def __str__(self):
        ws = ",".join(_exp_str(c2) for _, c2 in self.coords)
        ps = ",".join(_PHASE_STR[p] for p, _ in self.coords)
        return f"{ws};{ps}" if any(p for p, _ in self.coords) else ws

    def __eq__(self, other):
        return isinstance(other, WeightSpec) and self.coords == other.coords

    __hash__ = None
