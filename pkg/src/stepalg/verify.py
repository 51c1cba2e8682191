"""Named verification suites driving the identity and property checks, with
deterministic seeded weight batteries and adversarial degenerate loci.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .decomposition import (
    cj_factored, cj_route, ratio_is_monomial, zero_locus_ratio,
)
from .freealg import (
    FreeElt, composite_f, principal_word, qcomm, serre_element, serre_pairs, tau,
)
from .raising import (
    apply_mixed, delta_dual_matches, gen_plus, tau_dual_pair, zcheck_plus,
)
from .scalars import RatFn, WeightSpec
from .shapovalov import fhat, gen_minus, quotient_minus, singular_vector, check_singular
from .verma import (
    TensorVec, VermaVec, graded_project, is_zero, is_zero_verma, multiset_perms,
)

SUITES = ("serre", "tau", "singular", "factorization", "regularity-minus",
          "regularity-plus", "principal", "jacobi", "all")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


# ---------------------------------------------------------------------------
# Weight batteries
# ---------------------------------------------------------------------------

def weight_battery(rd, seed, count=100):
    """Deterministic pseudorandom half-integer weights."""
    rng = random.Random((seed, rd.family, rd.n).__repr__())
    return [WeightSpec.from_halves([rng.randint(-12, 12) for _ in range(rd.nvars)])
            for _ in range(count)]


def solve_monomial_at(rd, m, rng, target=1):
    """A concrete weight where the monomial m = (q2, t2) evaluates to the
    target sign, or None when the phase target is unreachable.

    The q exponent is zeroed by solving one linear equation exactly; a -1
    target is produced with a quarter phase on a suitable coordinate.
    """
    q2, t2 = m
    t2 = t2 + (0,) * (rd.nvars - len(t2))
    support = [i for i, e in enumerate(t2) if e]
    if not support:
        return None
    phases = [0] * rd.nvars
    if target == -1:
        pick = next((i for i in support if t2[i] % 4 == 2), None)
        if pick is None:
            return None
        phases[pick] = 1  # i^(t2/2) with t2 = 2 mod 4 contributes -1
    for _ in range(40):
        w2 = [2 * rng.randint(-6, 6) for _ in range(rd.nvars)]
        for p in support:
            rest = sum(w2[i] * t2[i] for i in range(rd.nvars) if i != p)
            num = -2 * q2 - rest
            if num % t2[p] == 0:
                w2[p] = num // t2[p]
                return WeightSpec.from_halves(w2, phases)
    return None


def minus_loci(rd, j, seed):
    """Degenerate weights for the lowering battery: each single Cartan
    denominator locus, plus the quarter-phase loci of so(2n+1)."""
    from .shapovalov import prec_nodes
    rng = random.Random((seed, "locus-", rd.family, rd.n, j).__repr__())
    out = []
    for l in prec_nodes(rd, j):
        m = rd.eta(l, j).mono(-2)
        w = solve_monomial_at(rd, m, rng, target=1)
        if w is not None:
            out.append(w)
        if rd.family == "B":
            w = solve_monomial_at(rd, m, rng, target=-1)
            if w is not None:
                out.append(w)
    if rd.family == "B" and j >= rd.prime(rd.s_boundary):
        # q y_* = -1: the zero locus of the extra divisor
        base = rd.eta(rd.star, j).mono(-2)
        half = (base[0] + 2, base[1])
        w = solve_monomial_at(rd, half, rng, target=-1)
        if w is not None:
            out.append(w)
    return out


def plus_loci(rd, j, seed):
    """Degenerate weights for the raising battery: inverse-coefficient loci
    and the orthogonal divisor loci."""
    rng = random.Random((seed, "locus+", rd.family, rd.n, j).__repr__())
    out = []
    for l in range(j + 1, rd.N + 1):
        if not rd.precedes(j, l):
            continue
        m = (rd.eta(j, 1) - rd.eta(l, 1)).mono(2)
        w = solve_monomial_at(rd, m, rng, target=1)
        if w is not None:
            out.append(w)
    if rd.family == "B" and j <= rd.s_boundary:
        base = (rd.eta(j, 1) - rd.eta(rd.star, 1)).mono(2)
        w = solve_monomial_at(rd, (base[0] + 2, base[1]), rng, target=-1)
        if w is not None:
            out.append(w)
    if rd.family == "D" and j <= rd.s_boundary:
        m = (rd.eta(j, 1) - rd.eta(rd.prime(j), 1)).mono(2)
        w = solve_monomial_at(rd, m, rng, target=1)
        if w is not None:
            out.append(w)
    return out


def evaluate_elt(elt, w):
    t = {}
    for word, c in elt.terms.items():
        v = c.evaluate(w)
        if not v.is_zero():
            t[word] = v
    return FreeElt(elt.sign, t)


def _reduced_word(rd, counts, word):
    """Free word reduced modulo the Serre slice, cached; linearity then
    makes per-weight nonzero checks a small dot product."""
    key = ("srw", counts, word)
    cache = rd._caches
    hit = cache.get(key)
    if hit is None:
        from .scalars import RF_ONE
        from .shapovalov import serre_slice_echelon
        ech = serre_slice_echelon(rd, counts)
        hit = {k: c for k, c in ech.reduce({word: RF_ONE}).items() if not c.is_zero()}
        cache[key] = hit
    return hit


def elt_nonzero_at(rd, elt, w):
    """Exact nonzero test of the element evaluated at a concrete weight.

    A single Shapovalov pairing certifies most nonzero values immediately;
    otherwise the element is reduced modulo the Serre slice (the kernel of
    the free model, which is also the pairing-oracle kernel)."""
    from .verma import _pair_words, dominant_spec
    from .scalars import RF_ZERO
    ev = evaluate_elt(elt, w)
    if ev.is_zero_repr():
        return False
    spec = dominant_spec(rd)
    words = sorted(ev.terms)
    for ew in {words[0][::-1], words[-1][::-1]}:
        s = RF_ZERO
        for word, c in ev.terms.items():
            g = _pair_words(rd, ew, word, spec)
            if not g.is_zero():
                s = s + c * g
        if not s.is_zero():
            return True
    counts = [0] * len(rd.alphas)
    for k in words[0]:
        counts[k - 1] += 1
    counts = tuple(counts)
    acc = {}
    for word, c in ev.terms.items():
        for key, rc in _reduced_word(rd, counts, word).items():
            s = acc.get(key)
            s = c * rc if s is None else s + c * rc
            acc[key] = s
    return any(not c.is_zero() for c in acc.values())


def mixed_nonzero_at(rd, z, w):
    for k in sorted(z.terms, reverse=True):
        if elt_nonzero_at(rd, z.terms[k], w):
            return True
    return False


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def suite_serre(rd, seed=0):
    out = []
    for k, l in serre_pairs(rd):
        ok = is_zero(rd, serre_element(rd, k, l))
        out.append(CheckResult(f"serre[{k},{l}]", ok))
    return out


def suite_jacobi(rd, seed=0):
    rng = random.Random((seed, "jacobi").__repr__())
    n = len(rd.alphas)
    out = []
    ok_all = True
    for _ in range(100):
        def rand_elt():
            w = tuple(rng.randint(1, n) for _ in range(rng.randint(1, 3)))
            return FreeElt.word(w, coeff=RatFn.qpow(2 * rng.randint(-2, 2)))

        x, y, z = rand_elt(), rand_elt(), rand_elt()
        a, b, c = (RatFn.qpow(2 * rng.randint(-3, 3)) for _ in range(3))
        lhs = qcomm(x, qcomm(y, z, a), b)
        rhs = (qcomm(qcomm(x, y, c), z, a * b / c)
               + qcomm(y, qcomm(x, z, b / c), a / c).scale(c))
        if not lhs.same_terms(rhs):
            ok_all = False
            break
    out.append(CheckResult("jacobi[100 random triples]", ok_all))
    return out


def suite_tau(rd, seed=0):
    out = []
    if rd.family == "A":
        x = composite_f(rd, 1, rd.N)
        ok = tau(tau(x)).same_terms(x)
        out.append(CheckResult("tau.involution", ok,
                               "flip identity is vacuous for gl"))
        return out
    for i in range(1, rd.N + 1):
        for j in range(i + 1, rd.N + 1):
            if not rd.precedes(i, j):
                continue
            lhs = tau(composite_f(rd, i, j))
            rhs = composite_f(rd, rd.prime(j), rd.prime(i))
            ok = is_zero(rd, lhs - rhs)
            out.append(CheckResult(f"tau[{i},{j}]", ok))
    return out


def suite_singular(rd, seed=0):
    out = []
    for j in range(1, rd.N + 1):
        ok = check_singular(rd, singular_vector(rd, j, cleared=True))
        out.append(CheckResult(f"singular[{j}]", ok))
    return out


def suite_factorization(rd, seed=0):
    out = []
    for j in range(1, rd.N + 1):
        ok = cj_route(rd, j) == cj_factored(rd, j)
        out.append(CheckResult(f"factorization[{j}]", ok))
    if rd.n <= 3:
        for j in range(2, rd.N + 1):
            ok = ratio_is_monomial(zero_locus_ratio(rd, j))
            out.append(CheckResult(f"zero-locus[{j}]", ok))
    return out


_PRINCIPAL_CAP = 200


def suite_principal(rd, seed=0):
    out = []
    for j in range(2, rd.N + 1):
        for i in range(1, j):
            if not rd.precedes(i, j):
                continue
            mults = rd.simple_mults(rd.node_gap(i, j))
            if mults is None:
                continue
            words = multiset_perms(mults)
            if len(words) > _PRINCIPAL_CAP:
                continue
            psi = principal_word(rd, i, j)
            expect = RatFn.qpow(rd.rho_tilde2(i) - rd.rho_tilde2(j))
            if rd.dist(i, j) % 2:
                expect = -expect
            path_words = {tuple(rd.arc_label(a, b) for a, b in zip(p, p[1:]))
                          for p in rd.paths(i, j)}
            ok = True
            for w in words:
                from .scalars import RF_ONE
                val = graded_project(rd, j, TensorVec({i: VermaVec({w: RF_ONE})}))
                if w in path_words:
                    ok = ok and val == expect
                else:
                    ok = ok and val.is_zero()
            out.append(CheckResult(f"principal[{i},{j}]", ok))
    return out


def minus_pairs(rd):
    if rd.family in ("A", "C"):
        hi = rd.N
        return [(1, j) for j in range(2, hi + 1)]
    pairs = []
    for j in range(2, rd.N + 1):
        for i in range(1, j):
            if rd.precedes(i, j) and i <= rd.prime(j):
                pairs.append((i, j))
    return pairs


def suite_regularity_minus(rd, seed=0, battery_size=100):
    out = []
    battery = weight_battery(rd, seed, battery_size)
    for i, j in minus_pairs(rd):
        try:
            g = quotient_minus(rd, i, j)
        except ArithmeticError as e:
            out.append(CheckResult(f"minus-div[{i},{j}]", False, str(e)))
            continue
        out.append(CheckResult(f"minus-div[{i},{j}]", True))
        weights = battery + minus_loci(rd, j, seed)
        bad = sum(1 for w in weights if not elt_nonzero_at(rd, g.element, w))
        out.append(CheckResult(f"minus-nonzero[{i},{j}]", bad == 0,
                               f"{len(weights)} weights"))
    return out


def suite_regularity_plus(rd, seed=0, battery_size=100):
    out = []
    battery = weight_battery(rd, seed, battery_size)
    for j in range(2, rd.N + 1):
        try:
            g = gen_plus(rd, j)
        except ArithmeticError as e:
            out.append(CheckResult(f"plus-div[{j}]", False, str(e)))
            continue
        out.append(CheckResult(f"plus-div[{j}]", True))
        weights = battery + plus_loci(rd, j, seed)
        bad = sum(1 for w in weights if not mixed_nonzero_at(rd, g, w))
        out.append(CheckResult(f"plus-nonzero[{j}]", bad == 0,
                               f"{len(weights)} weights"))
    if rd.family in ("B", "D"):
        for j in range(2, rd.s_boundary + 1):
            out.append(CheckResult(f"delta-dual[{j}]", delta_dual_matches(rd, j)))
    if rd.family != "A" and rd.n <= 3:
        for j in range(2, rd.N + 1):
            for k in range(j + 1, rd.N + 1):
                if not rd.precedes(j, k):
                    continue
                lhs, rhs = tau_dual_pair(rd, j, k)
                out.append(CheckResult(f"tau-dual[{j},{k}]", is_zero(rd, lhs - rhs)))
    if rd.n <= 3:
        hi = rd.N if rd.family in ("A", "C") else rd.N - 1
        jp = min(rd.prime(2), hi)
        u = VermaVec(dict(fhat(rd, 1, jp).terms))
        for j in (2, min(3, rd.N)):
            got = apply_mixed(rd, gen_plus(rd, j), u)
            ok = all(is_zero_verma(rd, _act(rd, k, got), symbolic=True)
                     for k in range(2, rd.n + 1))
            out.append(CheckResult(f"plus-preserves-singular[{j}]", ok))
    return out


def _act(rd, k, v):
    from .verma import act_e
    return act_e(rd, k, v)


def run_suite(name, rd, seed=0):
    table = {
        "serre": [suite_serre],
        "tau": [suite_tau],
        "singular": [suite_singular],
        "factorization": [suite_factorization],
        "regularity-minus": [suite_regularity_minus],
        "regularity-plus": [suite_regularity_plus],
        "principal": [suite_principal],
        "jacobi": [suite_jacobi],
    }
    if name == "all":
        fns = [f for key in ("serre", "jacobi", "tau", "singular", "principal",
                             "factorization", "regularity-minus", "regularity-plus")
               for f in table[key]]
    else:
        fns = table[name]
    out = []
    for f in fns:
        out.extend(f(rd, seed))
    return out
