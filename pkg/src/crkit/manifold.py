"""Real algebraic sets given implicitly and CR-generic manifolds in graph form.

Both kinds live in the ring ``z1..zn, zb1..zbn`` where ``zbk`` stands for the
independent conjugate variable (written ζ in comments).  A point ``p`` of
``C^n`` is complexified as ``(p, conj(p))``.

Graph form: with ``t = (w, z)``, ``w = (z1..zm)``, ``z = (z_{m+1}..zn)``,
the manifold is ``ξ_l = Q_l(ζ_w, t)`` where ``ξ_l = zb_{m+l}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import random
from typing import Sequence
import warnings

from .gaussrat import GaussRat, ONE, ZERO, I
from .ideal import Ideal, eliminate, Elimination
from .linalg import Matrix, det, inverse, rank
from .poly import GRLEX, Poly, Ring
from . import sampling


class NotOnManifold(ValueError):
    pass


class NotCRGeneric(ValueError):
    pass


class NonRealInput(ValueError):
    pass


Point = tuple  # of GaussRat


def as_point(coords) -> tuple:
    return tuple(GaussRat.coerce(c) for c in coords)


def complexified(p) -> list[GaussRat]:
    """``(p, conj p)`` as a point of the 2n-variable ring."""
    p = as_point(p)
    return list(p) + [x.conj() for x in p]


def real_ring(n: int) -> Ring:
    return Ring.holomorphic(["x%d" % (k + 1) for k in range(n)] + ["y%d" % (k + 1) for k in range(n)])


def to_real(p: Poly, rr: Ring | None = None) -> Poly:
    """Substitute ``z = x + i y``, ``ζ = x - i y``."""
    n = p.ring.nvars // 2
    rr = rr or real_ring(n)
    xs = [rr.var(k) for k in range(n)]
    ys = [rr.var(n + k) for k in range(n)]
    images = [xs[k] + ys[k] * I for k in range(n)] + [xs[k] - ys[k] * I for k in range(n)]
    return p.compose(rr, images)


def real_parts(p: Poly) -> tuple[Poly, Poly]:
    """``(Re p, Im p)`` as real polynomials in (z, ζ)."""
    pc = p.conjugate()
    half = GaussRat(Fraction(1, 2))
    return (p + pc) * half, (p - pc) * (half / I)


def _real_to_point(v: Sequence[GaussRat], n: int) -> tuple:
    return tuple(v[k] + v[n + k] * I for k in range(n))


def _point_to_real(p, n: int) -> dict[int, GaussRat]:
    out = {}
    for k, x in enumerate(as_point(p)):
        out[k] = GaussRat(x.re)
        out[n + k] = GaussRat(x.im)
    return out


class _Base:
    n: int
    ring: Ring
    name: str

    # subclasses provide these
    def defining(self) -> list[Poly]:
        raise NotImplementedError

    def real_equations(self) -> list[Poly]:
        raise NotImplementedError

    @property
    def codim(self) -> int:
        raise NotImplementedError

    def jacobian(self) -> Matrix:
        """σ×2n Jacobian of the complexified generators w.r.t. (z, ζ)."""
        gens = self.defining()
        return Matrix([[g.diff(k) for k in range(2 * self.n)] for g in gens], self.ring)

    def contains(self, p) -> bool:
        pc = complexified(p)
        return all(g.evaluate(pc).is_zero() for g in self.defining())

    def require_on(self, p):
        if len(p) != self.n:
            raise ValueError("point must have %d coordinates" % self.n)
        if not self.contains(p):
            raise NotOnManifold("point is not on %s" % (self.name or "the manifold"))

    # -- sampling of real points
    def _real_blocks(self, k: int, candidates=None):
        key = ("_rb", k, tuple(candidates) if candidates else None)
        cache = self.__dict__.setdefault("_cache", {})
        if key not in cache:
            eqs = self.real_equations()
            cand = candidates if candidates is not None else range(2 * self.n)
            cache[key] = (eqs, sampling.affine_blocks(eqs, list(cand), k))
        return cache[key]

    def sample_point(self, rng: random.Random, *, near=None, spread: Fraction = Fraction(1, 16),
                     accept=None, attempts: int = 60) -> tuple:
        """Exact real point of M (rational coordinates in x and y)."""
        n = self.n
        eqs, blocks = self._real_blocks(self._sample_block_size(), self._sample_candidates())
        if near is not None:
            base = _point_to_real(near, n)
            den = spread.denominator * 8

            def draw(r, v):
                return base[v] + GaussRat(Fraction(r.randint(-8, 8), den) * spread.numerator)
        else:
            draw = sampling.draw_int(-3, 3)
        ok = None
        if accept is not None:
            def ok(v):
                return accept(_real_to_point(v, n))
        v = sampling.sample_point(eqs, 2 * n, 0, rng, draw, blocks=blocks, accept=ok, attempts=attempts)
        return _real_to_point(v, n)

    def _sample_block_size(self) -> int:
        return self.codim

    def _sample_candidates(self):
        return None

    def sample_complex(self, rng: random.Random, attempts: int = 60) -> list[GaussRat]:
        """Exact point of the complexification (z and ζ independent)."""
        gens = self.defining()
        cache = self.__dict__.setdefault("_cache", {})
        key = ("_cb",)
        if key not in cache:
            blocks = []
            for k in range(min(len(gens), 2 * self.n), 0, -1):
                blocks = sampling.affine_blocks(gens, list(range(2 * self.n)), k)
                if blocks:
                    break
            cache[key] = blocks
        blocks = cache[key]
        if not blocks:
            raise sampling.SamplingError("no smooth point found")
        return sampling.sample_point(gens, 2 * self.n, 0, rng, sampling.draw_gauss(4),
                                     blocks=blocks, attempts=attempts)

    # -- local invariants
    def rank_at(self, p) -> int:
        return rank(self.jacobian().evaluate(complexified(p)))

    def regular_at(self, p) -> bool:
        self.require_on(p)
        return self.rank_at(p) == self.codim

    def cr_rank_at(self, p) -> int:
        """Rank ``d1(p)`` of the holomorphic block ``∂P/∂z`` at ``(p, p̄)``."""
        self.require_on(p)
        pc = complexified(p)
        gens = self.defining()
        return rank([[g.diff(k).evaluate(pc) for k in range(self.n)] for g in gens])

    def cr_generic_at(self, p, seed: int = 0, samples: int = 8) -> dict:
        """CR-genericity at p: ``d1 = d`` at p and at perturbed nearby samples (probabilistic)."""
        d1 = self.cr_rank_at(p)
        ok = d1 == self.codim and self.regular_at(p)
        rng = random.Random(seed)
        checked = 0
        if ok:
            for _ in range(samples):
                try:
                    q = self.sample_point(rng, near=p)
                except sampling.SamplingError:
                    break
                checked += 1
                if self.cr_rank_at(q) != d1:
                    ok = False
                    break
        return {"cr_generic": ok, "d1": d1, "perturbed_samples": checked, "probabilistic": True}

    def complexify(self) -> Ideal:
        return Ideal(self.defining(), GRLEX, ring=self.ring)

    def intrinsic_complexification(self, degree_cap: int = 8) -> Elimination:
        return eliminate(self.complexify(), list(range(self.n, 2 * self.n)), degree_cap)


class ImplicitManifold(_Base):
    """Real algebraic set ``{P_1 = ... = P_σ = 0}`` with real generators."""

    form = "implicit"

    def __init__(self, n: int, gens: Sequence[Poly | str], name: str = "", base_point=None):
        self.n = n
        self.ring = Ring.complex(n)
        self.name = name
        gens = [self.ring.parse(g) if isinstance(g, str) else g for g in gens]
        for g in gens:
            if g.ring != self.ring:
                raise ValueError("generators must live in Ring.complex(%d)" % n)
            if not g.is_real():
                raise NonRealInput("generator %s is not real" % g)
        if not any(not g.is_zero() for g in gens):
            raise ValueError("need at least one nonzero generator")
        self.gens = [g for g in gens if not g.is_zero()]
        self.base_point = as_point(base_point) if base_point is not None else None
        self._codim = None
        if self.base_point is not None:
            self.require_on(self.base_point)

    def defining(self) -> list[Poly]:
        return self.gens

    def real_equations(self) -> list[Poly]:
        cache = self.__dict__.setdefault("_cache", {})
        if "real" not in cache:
            rr = real_ring(self.n)
            cache["real"] = [to_real(g, rr) for g in self.gens]
        return cache["real"]

    def codimension(self, seed: int = 0, trials: int = 6) -> int:
        """Generic rank of the Jacobian over the complexification, sampled on Σ^c."""
        rng = random.Random(seed)
        J = self.jacobian()
        ranks = []
        for _ in range(trials):
            try:
                pt = self.sample_complex(rng)
            except sampling.SamplingError as exc:
                raise sampling.SamplingError("no smooth point found") from exc
            ranks.append(rank(J.evaluate(pt)))
        if len(set(ranks)) > 1:
            warnings.warn("Jacobian rank fluctuates across samples of %s; the ideal may be reducible"
                          % (self.name or "Σ"), RuntimeWarning, stacklevel=2)
        return max(ranks)

    @property
    def codim(self) -> int:
        if self._codim is None:
            self._codim = self.codimension()
        return self._codim

    def _sample_block_size(self) -> int:
        return len(self.gens) if len(self.gens) <= self.codim else self.codim

    def __repr__(self):
        return "ImplicitManifold(%s, n=%d, %s)" % (self.name, self.n, [str(g) for g in self.gens])


class GraphManifold(_Base):
    """CR-generic manifold ``ξ = Q(ζ_w, t)``; Q may be a truncated series (``series_order``)."""

    form = "graph"

    def __init__(self, n: int, m: int, Q: Sequence[Poly | str], name: str = "",
                 series_order: int | None = None, base_point=None,
                 perm: Sequence[int] | None = None, center=None, source=None):
        if not 0 <= m < n:
            raise ValueError("need 0 <= m < n")
        self.n = n
        self.m = m
        self.d = n - m
        self.ring = Ring.complex(n)
        self.name = name
        Q = [self.ring.parse(q) if isinstance(q, str) else q for q in Q]
        if len(Q) != self.d:
            raise ValueError("need %d graph equations, got %d" % (self.d, len(Q)))
        bad = set(self.xi_idx)
        for q in Q:
            if q.ring != self.ring:
                raise ValueError("graph equations must live in Ring.complex(%d)" % n)
            if q.support() & bad:
                raise ValueError("graph equations must not involve the transverse conjugates")
        self.Q = Q
        self.series_order = series_order
        self.base_point = as_point(base_point) if base_point is not None else (ZERO,) * n
        self.perm = tuple(perm) if perm is not None else tuple(range(n))
        self.center = as_point(center) if center is not None else None
        self.source = source

    # index helpers
    @property
    def w_idx(self) -> list[int]:
        return list(range(self.m))

    @property
    def z_idx(self) -> list[int]:
        return list(range(self.m, self.n))

    @property
    def zw_idx(self) -> list[int]:
        return list(range(self.n, self.n + self.m))

    @property
    def xi_idx(self) -> list[int]:
        return list(range(self.n + self.m, 2 * self.n))

    @property
    def t_idx(self) -> list[int]:
        return list(range(self.n))

    @property
    def codim(self) -> int:
        return self.d

    @property
    def exact(self) -> bool:
        return self.series_order is None

    def defining(self) -> list[Poly]:
        return [self.ring.var(self.xi_idx[l]) - self.Q[l] for l in range(self.d)]

    def conj_Q(self) -> list[Poly]:
        """``Q̄_l(w, τ)``."""
        return [q.conjugate() for q in self.Q]

    def substitute_graph(self, p: Poly) -> Poly:
        """Normal form modulo ``ξ - Q``: replace every ξ by Q."""
        return p.subs({self.xi_idx[l]: self.Q[l] for l in range(self.d)}, order=self.series_order)

    def real_equations(self) -> list[Poly]:
        cache = self.__dict__.setdefault("_cache", {})
        if "real" not in cache:
            rr = real_ring(self.n)
            eqs = []
            for e in self.defining():
                for part in real_parts(e):
                    r = to_real(part, rr)
                    if not r.is_zero():
                        eqs.append(r)
            cache["real"] = eqs
        return cache["real"]

    def _sample_candidates(self):
        n = self.n
        return [k for k in self.z_idx] + [n + k for k in self.z_idx]

    def sample_complex(self, rng: random.Random, attempts: int = 60) -> list[GaussRat]:
        vals = [GaussRat(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(self.n + self.m)]
        pt = vals[:self.n] + vals[self.n:] + [ZERO] * self.d
        for l in range(self.d):
            pt[self.xi_idx[l]] = self.Q[l].evaluate(pt)
        return pt

    def verify_reality(self) -> bool:
        """``z_l - Q̄_l(w, ζ_w, Q(ζ_w, t))`` vanishes (through the series order if truncated)."""
        for l, qb in enumerate(self.conj_Q()):
            r = self.ring.var(self.z_idx[l]) - self.substitute_graph(qb)
            if self.series_order is not None:
                r = r.truncate(self.series_order)
            if not r.is_zero():
                return False
        return True

    def linear_change(self, A, B, C) -> "GraphManifold":
        """Coordinates ``w' = A w``, ``z' = B z + C w`` (keeps the graph splitting)."""
        m, d, n = self.m, self.d, self.n
        Ainv = inverse(A) if m else []
        Binv = inverse(B)
        R = self.ring
        new = [R.var(k) for k in range(2 * n)]
        zero = R.zero()

        def lin(mat, vec):
            return [sum((vec[j] * mat[i][j] for j in range(len(vec))), zero) for i in range(len(mat))]

        def conjm(mat):
            return [[x.conj() for x in row] for row in mat]

        w_old = lin(Ainv, new[:m]) if m else []
        zeta_w_old = lin(conjm(Ainv), new[n:n + m]) if m else []
        Cw = lin(C, w_old) if m else [zero] * d
        z_old = lin(Binv, [new[m + l] - Cw[l] for l in range(d)])
        images = w_old + z_old + zeta_w_old + [zero] * d
        Qc = [q.compose(R, images, order=self.series_order) for q in self.Q]
        Cb_zeta = lin(conjm(C), zeta_w_old) if m else [zero] * d
        Qn = [x + Cb_zeta[l] for l, x in enumerate(lin(conjm(B), Qc))]
        bp = self.base_point
        w_new = [sum((A[i][j] * bp[j] for j in range(m)), ZERO) for i in range(m)]
        z_new = [sum((B[l][j] * bp[m + j] for j in range(d)), ZERO)
                 + sum((C[l][j] * bp[j] for j in range(m)), ZERO) for l in range(d)]
        return GraphManifold(n, m, Qn, name=self.name, series_order=self.series_order,
                             base_point=w_new + z_new)

    def with_order(self, order: int) -> "GraphManifold":
        """Re-solve a series manifold at another truncation order."""
        if self.source is None:
            raise ValueError("manifold has no implicit source to re-solve")
        sigma, p = self.source
        return graph_solve(sigma, p, order)

    def __repr__(self):
        return "GraphManifold(%s, n=%d, m=%d, Q=%s%s)" % (
            self.name, self.n, self.m, [str(q) for q in self.Q],
            "" if self.exact else ", order=%d" % self.series_order)


def random_linear_change(M: GraphManifold, rng: random.Random, bound: int = 2) -> GraphManifold:
    """Apply a random invertible Gaussian-integer change preserving the splitting."""
    def rand_mat(r, c):
        return [[GaussRat(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(c)]
                for _ in range(r)]

    def rand_invertible(k):
        while True:
            A = rand_mat(k, k)
            if k == 0 or not det(A).is_zero():
                return A

    A = rand_invertible(M.m)
    B = rand_invertible(M.d)
    C = rand_mat(M.d, M.m)
    return M.linear_change(A, B, C)


def rigid_graph(n: int, m: int, thetas: Sequence[Poly], name: str = "") -> GraphManifold:
    """``ξ_l = z_l - i Θ_l(w, ζ_w)`` for real Θ_l."""
    R = Ring.complex(n)
    Q = []
    for l, th in enumerate(thetas):
        if not th.is_real():
            raise NonRealInput("Θ must be real")
        Q.append(R.var(m + l) - th * I)
    return GraphManifold(n, m, Q, name=name)


def random_rigid_graph(rng: random.Random, n: int, m: int, degree: int = 3, terms: int = 3,
                       name: str = "random") -> GraphManifold:
    """Random real rigid graph manifold with Θ built from terms ``c w^α ζ^β + c̄ w^β ζ^α``."""
    R = Ring.complex(n)
    thetas = []
    for _ in range(n - m):
        th = R.zero()
        while th.is_zero():
            for _ in range(terms):
                while True:
                    a = [rng.randint(0, degree) for _ in range(m)]
                    b = [rng.randint(0, degree) for _ in range(m)]
                    if 1 <= sum(a) and 1 <= sum(b) and sum(a) + sum(b) <= degree:
                        break
                c = GaussRat(rng.randint(-3, 3), rng.randint(-3, 3))
                e1 = a + [0] * (n - m) + b + [0] * (n - m)
                e2 = b + [0] * (n - m) + a + [0] * (n - m)
                th = th + Poly.monomial(R, e1, c) + Poly.monomial(R, e2, c.conj())
        thetas.append(th)
    return rigid_graph(n, m, thetas, name=name)


def graph_solve(sigma: ImplicitManifold, p, order: int) -> GraphManifold:
    """Local graph ``ξ = Q(ζ_w, t)`` of Σ at p, as a series centered at p.

    The transverse directions are the columns of the d×d minor of ``∂P/∂ζ``
    at ``(p, p̄)`` with largest modulus (ties: first column set, then first
    row set in lex order).  Coordinates are permuted so that those come
    last and translated so that p becomes the origin.  Q is found by a
    frozen-Jacobian Newton iteration, one degree per step.
    """
    p = as_point(p)
    sigma.require_on(p)
    n = sigma.n
    d = sigma.codim
    gens = sigma.gens
    pc = complexified(p)
    if sigma.rank_at(p) != d or sigma.cr_rank_at(p) != d:
        raise NotCRGeneric("not CR-generic here")
    Jz = [[g.diff(n + k).evaluate(pc) for k in range(n)] for g in gens]
    best = None
    for cols in combinations(range(n), d):
        for rows in combinations(range(len(gens)), d):
            a = det([[Jz[i][j] for j in cols] for i in rows]).abs2()
            if a and (best is None or a > best[0]):
                best = (a, cols, rows)
    if best is None:
        raise NotCRGeneric("not CR-generic here")
    _, cols, rows = best
    m = n - d
    perm = [k for k in range(n) if k not in cols] + list(cols)
    newpos = {old: new for new, old in enumerate(perm)}
    R = Ring.complex(n)

    def images(xi):
        im = [None] * (2 * n)
        for old in range(n):
            im[old] = R.var(newpos[old]) + p[old]
            if old in cols:
                im[n + old] = xi[cols.index(old)] + p[old].conj()
            else:
                im[n + old] = R.var(n + newpos[old]) + p[old].conj()
        return im

    A = [[Jz[i][j] for j in cols] for i in rows]
    Ainv = inverse(A)
    xi = [R.zero() for _ in range(d)]
    for _ in range(order + 1):
        F = [gens[i].compose(R, images(xi), order=order) for i in rows]
        if all(f.is_zero() for f in F):
            break
        xi = [xi[l] - sum((F[k] * Ainv[l][k] for k in range(d)), R.zero()) for l in range(d)]
    for g in gens:
        if not g.compose(R, images(xi), order=order).is_zero():
            raise NotCRGeneric("graph residual does not vanish; not CR-generic here")
    exact = all(g.compose(R, images(xi)).is_zero() for g in gens) and \
        max(x.total_degree() for x in xi) < order
    return GraphManifold(n, m, xi, name=sigma.name, series_order=None if exact else order,
                         perm=perm, center=p, source=(sigma, p))
