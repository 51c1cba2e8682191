"""Root systems and the natural representation for gl(n+1), so(2n+1),
sp(2n) and so(2n), together with the Hasse poset on the weight basis of the
natural module and the affine weight forms used by all coefficient formulas.

Nodes are 1-based; i' = N+1-i is the flip of [1, N] and * = (N+1)/2 is the
middle node when N is odd.  Weight coordinates are in the orthonormal
epsilon basis; half-integer data is stored doubled.
"""

from __future__ import annotations

from typing import NamedTuple

from .scalars import RatFn, _strip, mono, qnum_mono


class AffineForm(NamedTuple):
    """Affine function of the weight: lambda -> (lambda, mu) + const,
    with mu coordinates and the constant stored doubled."""

    mu2: tuple
    c2: int

    def __add__(self, other):
        return AffineForm(tuple(a + b for a, b in zip(self.mu2, other.mu2)),
                          self.c2 + other.c2)

    def __sub__(self, other):
        return AffineForm(tuple(a - b for a, b in zip(self.mu2, other.mu2)),
                          self.c2 - other.c2)

    def scale(self, k):
        return AffineForm(tuple(k * a for a in self.mu2), k * self.c2)

    def is_const(self):
        return not any(self.mu2)

    def mono(self, s=1):
        """Monomial realizing q^(s * form): t exponents from mu, q from const."""
        return (s * self.c2, _strip(tuple(s * m for m in self.mu2)))


def q_form(form, s=1):
    """RatFn monomial q^(s*form)."""
    return RatFn.from_mono(form.mono(s))


def qnum_form(form):
    """[z]_q with z the affine form, realized through weight monomials."""
    return qnum_mono(form.mono())


_VALID = {"A", "B", "C", "D"}


class RootData:
    """All static data of one algebra: weights of the natural basis, rho,
    simple roots, generator action on the natural module, and the Hasse
    diagram of the reachability order."""

    def __init__(self, family, rank):
        if family not in _VALID:
            raise ValueError(f"unknown family {family!r}")
        if rank < 1 or (family == "D" and rank < 2):
            raise ValueError(f"invalid rank {rank} for family {family}")
        self.family = family
        self.n = rank
        n = rank
        if family == "A":
            N = n + 1
            self.nvars = N
            eps = [self._unit(i, N) for i in range(1, N + 1)]
            rho2 = tuple(N + 1 - 2 * i for i in range(1, N + 1))
            alphas = [self._diff(k, k + 1, N) for k in range(1, n + 1)]
            norms = [2] * n
            e_maps = [{k + 1: k} for k in range(1, n + 1)]
        else:
            N = 2 * n + 1 if family == "B" else 2 * n
            self.nvars = n
            eps = []
            for i in range(1, N + 1):
                if 2 * i < N + 1:
                    eps.append(self._unit(i, n))
                elif 2 * i == N + 1:
                    eps.append((0,) * n)
                else:
                    eps.append(tuple(-x for x in self._unit(N + 1 - i, n)))
            if family == "B":
                rho2 = tuple(2 * (n - k) + 1 for k in range(1, n + 1))
            elif family == "C":
                rho2 = tuple(2 * (n - k + 1) for k in range(1, n + 1))
            else:
                rho2 = tuple(2 * (n - k) for k in range(1, n + 1))
            alphas = [self._diff(k, k + 1, n) for k in range(1, n)]
            norms = [2] * (n - 1)
            e_maps = [{k + 1: k, N + 1 - k: N - k} for k in range(1, n)]
            if family == "B":
                alphas.append(self._unit(n, n))
                norms.append(1)
                e_maps.append({n + 1: n, n + 2: n + 1})
            elif family == "C":
                alphas.append(tuple(2 * x for x in self._unit(n, n)))
                norms.append(4)
                e_maps.append({n + 1: n})
            else:
                a = list(self._unit(n - 1, n))
                a[n - 1] = 1
                alphas.append(tuple(a))
                norms.append(2)
                e_maps.append({n + 1: n - 1, n + 2: n})
        self.N = N
        self.eps = tuple(eps)
        self.rho2 = rho2
        self.alphas = tuple(alphas)
        self.alpha_norm2 = tuple(norms)
        self.e_maps = tuple(e_maps)
        self.f_maps = tuple({dst: src for src, dst in em.items()}
                            for em in e_maps)
        self.covers = sorted((src, dst, k + 1)
                             for k, fm in enumerate(self.f_maps)
                             for src, dst in fm.items())
        self._close_order()
        self._caches = {}

    @staticmethod
    def _unit(i, n):
        return tuple(1 if j == i else 0 for j in range(1, n + 1))

    @staticmethod
    def _diff(i, j, n):
        return tuple((1 if k == i else 0) - (1 if k == j else 0)
                     for k in range(1, n + 1))

    def _close_order(self):
        N = self.N
        less = [[False] * (N + 1) for _ in range(N + 1)]
        succ = [[] for _ in range(N + 1)]
        for src, dst, _ in self.covers:
            succ[src].append(dst)
        for i in range(N, 0, -1):
            for d in succ[i]:
                less[i][d] = True
                for j in range(1, N + 1):
                    if less[d][j]:
                        less[i][j] = True
        self._less = less
        dist = {}
        for i in range(1, N + 1):
            frontier = {i: 0}
            seen = dict(frontier)
            while frontier:
                nxt = {}
                for node, d in frontier.items():
                    for dd in succ[node]:
                        if dd not in seen:
                            seen[dd] = d + 1
                            nxt[dd] = d + 1
                frontier = nxt
            for j, d in seen.items():
                if i != j:
                    dist[(i, j)] = d
        self._dist = dist

    # -- index helpers -------------------------------------------------------

    def prime(self, i):
        return self.N + 1 - i

    @property
    def star(self):
        if self.N % 2 == 0:
            raise ValueError("* is defined only for odd N")
        return (self.N + 1) // 2

    @property
    def s_boundary(self):
        """Largest node of the gl part stable under diagram symmetry."""
        return self.n - 1 if self.family == "D" else self.n

    def sigma_nodes(self):
        """Nodes of the two boundary gl intervals [1,s] and [s',N]."""
        s = self.s_boundary
        return tuple(range(1, s + 1)) + tuple(range(self.prime(s), self.N + 1))

    def precedes(self, i, j):
        return self._less[i][j]

    def dist(self, i, j):
        return self._dist[(i, j)]

    # -- inner products ------------------------------------------------------

    @staticmethod
    def ip(u, v):
        return sum(a * b for a, b in zip(u, v))

    def norm2(self, i):
        return self.ip(self.eps[i - 1], self.eps[i - 1])

    def rho_node2(self, i):
        return sum(r * e for r, e in zip(self.rho2, self.eps[i - 1]))

    def rho_tilde2(self, i):
        return self.rho_node2(i) + self.norm2(i)

    def cartan_a(self, k, l):
        ak, al = self.alphas[k - 1], self.alphas[l - 1]
        return 2 * self.ip(ak, al) // self.alpha_norm2[k - 1]

    # -- affine forms --------------------------------------------------------

    def eta(self, i, j):
        mu = tuple(a - b for a, b in zip(self.eps[i - 1], self.eps[j - 1]))
        c2 = self.rho_node2(i) - self.rho_node2(j) - self.ip(mu, mu)
        return AffineForm(tuple(2 * m for m in mu), c2)

    def xi(self, i, j):
        mu = tuple(a - b for a, b in zip(self.eps[i - 1], self.eps[j - 1]))
        c2 = (self.rho_node2(i) - self.rho_node2(j)
              + self.norm2(i) - self.norm2(j))
        return AffineForm(tuple(2 * m for m in mu), c2)

    # -- poset queries -------------------------------------------------------

    def routes(self, i, j):
        """All ascending node chains strictly between i and j, the empty
        route included, in lexicographic order."""
        key = ("routes", i, j)
        if key in self._caches:
            return self._caches[key]
        if i == j:
            out = [()]
        elif not self.precedes(i, j):
            out = []
        else:
            between = [m for m in range(i + 1, j)
                       if self.precedes(i, m) and self.precedes(m, j)]
            out = [()]
            stack = [((m,),) for m in between]

            def extend(route):
                out.append(route)
                last = route[-1]
                for m in between:
                    if m > last and self.precedes(last, m):
                        extend(route + (m,))

            for (r,) in stack:
                extend(r)
            out.sort()
        out = tuple(out)
        self._caches[key] = out
        return out

    def paths(self, i, j):
        """All maximal routes i -> j along cover arcs (node sequences
        including both endpoints)."""
        succ = {}
        for src, dst, _ in self.covers:
            succ.setdefault(src, []).append(dst)
        found = []

        def walk(path):
            node = path[-1]
            if node == j:
                found.append(tuple(path))
                return
            for d in sorted(succ.get(node, ())):
                if d <= j:
                    walk(path + [d])

        walk([i])
        return found

    def arc_label(self, src, dst):
        for s, d, k in self.covers:
            if (s, d) == (src, dst):
                return k
        raise ValueError(f"no arc {src}->{dst}")

    def simple_mults(self, mu):
        """Multiplicities m_k with sum m_k * alpha_k = mu, or None when mu is
        not a nonnegative integer combination."""
        n = len(self.alphas)
        rows = [list(a) for a in self.alphas]
        # solve x * A = mu exactly by Gaussian elimination on the transpose
        from fractions import Fraction
        m = [[Fraction(rows[k][c]) for k in range(n)] for c in range(self.nvars)]
        rhs = [Fraction(x) for x in mu]
        piv = []
        r = 0
        for c in range(n):
            pr = next((i for i in range(r, self.nvars) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            rhs[r], rhs[pr] = rhs[pr], rhs[r]
            inv = 1 / m[r][c]
            m[r] = [v * inv for v in m[r]]
            rhs[r] *= inv
            for i in range(self.nvars):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                    rhs[i] -= f * rhs[r]
            piv.append(c)
            r += 1
        sol = [Fraction(0)] * n
        for row, c in enumerate(piv):
            sol[c] = rhs[row]
        for i in range(r, self.nvars):
            if rhs[i]:
                return None
        if any(v.denominator != 1 or v < 0 for v in sol):
            return None
        out = tuple(int(v) for v in sol)
        if tuple(sum(s * a for s, a in zip(out, col)) for col in zip(*self.alphas)) != tuple(mu):
            return None
        return out

    def weight_of_word(self, word):
        """Sum of simple roots over the letters of a word."""
        acc = [0] * self.nvars
        for k in word:
            for i, a in enumerate(self.alphas[k - 1]):
                acc[i] += a
        return tuple(acc)

    def node_gap(self, i, j):
        """eps_i - eps_j as integer coordinates."""
        return tuple(a - b for a, b in zip(self.eps[i - 1], self.eps[j - 1]))

    def __repr__(self):
        names = {"A": f"gl({self.n + 1})", "B": f"so({self.N})",
                 "C": f"sp({self.N})", "D": f"so({self.N})"}
        return f"<RootData {names[self.family]}>"


_ROOT_CACHE = {}


def root_data(family, rank):
    key = (family, rank)
    if key not in _ROOT_CACHE:
        _ROOT_CACHE[key] = RootData(family, rank)
    return _ROOT_CACHE[key]
