"""Segre varieties, reflections and the Segre-transversality test."""

from __future__ import annotations

from dataclasses import dataclass, field
import random
from typing import Sequence

from .gaussrat import GaussRat, ZERO
from .ideal import Ideal
from .linalg import Matrix, exact_generic_rank, generic_rank_report, nullspace, rank
from .manifold import GraphManifold, ImplicitManifold, as_point, complexified
from .poly import Poly, Ring
from . import sampling


# ---------------------------------------------------------------- Segre varieties

@dataclass
class SegreVariety:
    ideal: Ideal          # generators in the holomorphic variables only
    base: tuple           # the point q of S_q̄

    def contains(self, p) -> bool:
        pt = list(as_point(p)) + [ZERO] * len(p)
        return all(g.evaluate(pt).is_zero() for g in self.ideal.gens)


def segre_polys(M, q) -> list[Poly]:
    """Defining generators with ζ frozen at ``q̄``."""
    q = as_point(q)
    n = M.n
    vals = {n + k: q[k].conj() for k in range(n)}
    out = []
    for g in M.defining():
        h = g.partial_eval(vals)
        if not h.is_zero():
            out.append(h.monic())
    return out


def segre_variety(M, q) -> SegreVariety:
    return SegreVariety(Ideal(segre_polys(M, q), ring=M.ring), as_point(q))


def segre_contains(M, p, q) -> bool:
    """Whether ``p ∈ S_q̄``."""
    pt = list(as_point(p)) + [x.conj() for x in as_point(q)]
    return all(g.evaluate(pt).is_zero() for g in M.defining())


def _segre_blocks(M):
    cache = M.__dict__.setdefault("_cache", {})
    if "segre_blocks" not in cache:
        cand = M.z_idx if isinstance(M, GraphManifold) else list(range(M.n))
        # affine structure in z does not depend on the frozen values, so test it on the raw generators
        blocks = sampling.affine_blocks(M.defining(), cand, M.codim)
        cache["segre_blocks"] = blocks
    return cache["segre_blocks"]


def sample_segre(M, q, rng: random.Random, w=None, attempts: int = 40) -> tuple:
    """A point of ``S_q̄`` with exact coordinates (w drawn from [-3, 3] unless given)."""
    polys = segre_polys(M, q)
    n = M.n
    fixed = {}
    if w is not None:
        fixed = {k: GaussRat.coerce(x) for k, x in enumerate(w)}
    blocks = _segre_blocks(M)
    pt = sampling.sample_point(polys, 2 * n, 0, rng, sampling.draw_int(-3, 3),
                               blocks=blocks, fixed=_pad_fixed(fixed, n), attempts=attempts)
    return tuple(pt[:n])


def _pad_fixed(fixed, n):
    # the ζ slots are absent from the frozen generators; pin them so no values get drawn for them
    out = dict(fixed)
    for k in range(n, 2 * n):
        out[k] = ZERO
    return out


def reciprocity_check(M, samples: int, seed: int = 0) -> dict:
    """``q ∈ S_p̄ ⇔ p ∈ S_q̄`` on random on-manifold p with q drawn on ``S_p̄`` (and off it)."""
    rng = random.Random(seed)
    agree = 0
    failures = []
    for s in range(samples):
        p = M.sample_point(rng)
        if s % 4 == 3:
            # an arbitrary point, typically off the Segre variety
            q = tuple(GaussRat(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(M.n))
        else:
            q = sample_segre(M, p, rng)
        a = segre_contains(M, q, p)
        b = segre_contains(M, p, q)
        if a == b:
            agree += 1
        else:
            failures.append({"p": [str(x) for x in p], "q": [str(x) for x in q]})
    return {"samples": samples, "agree": agree, "failures": failures, "holds": agree == samples}


# ---------------------------------------------------------------- complexified Segre

@dataclass
class ComplexifiedSegre:
    ring: Ring                 # holomorphic ring of the parameters w
    param: list[Poly]          # t-coordinates as polynomials in w
    frame: list[list[Poly]]    # m tangent vectors of length n


def complexified_segre(M: GraphManifold, tau) -> ComplexifiedSegre:
    """``{(w, Q̄(w, τ))}``: the t with ``(t, τ) ∈ M^c``."""
    if not M.exact:
        raise ValueError("complexified Segre varieties need an exact polynomial graph")
    n, m = M.n, M.m
    tau = as_point(tau)
    W = Ring.holomorphic(["w%d" % (k + 1) for k in range(m)])
    images = [W.var(k) for k in range(m)] + [W.zero()] * (n - m) + [W.const(x) for x in tau]
    zpart = [qb.compose(W, images) for qb in M.conj_Q()]
    param = [W.var(k) for k in range(m)] + zpart
    frame = [[p.diff(j) for p in param] for j in range(m)]
    return ComplexifiedSegre(W, param, frame)


# ---------------------------------------------------------------- reflections

@dataclass
class ReflectionSet:
    ideal: Ideal              # generators in the ζ-variables of the target ring
    sources: list
    dim: int | None = None    # None means unknown
    sample: tuple | None = None
    blocks: list = field(default_factory=list)

    @property
    def dimension(self):
        return "unknown" if self.dim is None else self.dim

    def involves(self, var: int) -> bool:
        return any(var in g.support() for g in self.ideal.gens)


def _reflection_polys(Mp, sources) -> list[Poly]:
    n = Mp.n
    out = []
    for e in sources:
        e = as_point(e)
        for g in Mp.defining():
            h = g.partial_eval({k: e[k] for k in range(n)})
            if not h.is_zero():
                out.append(h)
    return out


def _reflection_blocks(polys, n):
    cand = list(range(n, 2 * n))
    for k in range(min(len(polys), n), 0, -1):
        blocks = sampling.affine_blocks(polys, cand, k)
        if blocks:
            yield from blocks


def sample_reflection(polys, n: int, rng: random.Random, blocks=None, attempts: int = 30):
    """A point ``w'`` with ``S_w̄' ⊃ E'`` (exact), or None."""
    if blocks is None:
        blocks = list(_reflection_blocks(polys, n))
    fixed = {k: ZERO for k in range(n)}
    for S in blocks:
        try:
            pt = sampling.sample_point(polys, 2 * n, 0, rng, sampling.draw_gauss(3), blocks=[S],
                                       fixed=fixed, attempts=attempts)
        except sampling.SamplingError:
            continue
        return tuple(x.conj() for x in pt[n:])
    return None


def first_reflection(Mp, sources: Sequence, seed: int = 0) -> ReflectionSet:
    """``r(E') = {w' : S_w̄' ⊃ E'}`` with a sampled dimension estimate."""
    if not sources:
        raise ValueError("need at least one source point")
    n = Mp.n
    polys = _reflection_polys(Mp, sources)
    ideal = Ideal(polys, ring=Mp.ring)
    if not polys:
        return ReflectionSet(ideal, list(sources), n, tuple([ZERO] * n))
    blocks = list(_reflection_blocks(polys, n))
    rng = random.Random(seed)
    w = sample_reflection(polys, n, rng, blocks)
    if w is None:
        return ReflectionSet(ideal, list(sources), None, None, blocks)
    pt = [ZERO] * n + [x.conj() for x in w]
    J = [[g.diff(n + k).evaluate(pt) for k in range(n)] for g in polys]
    return ReflectionSet(ideal, list(sources), n - rank(J), w, blocks)


def double_reflection_sample(f, M, Mp, z, w, k_samples: int = 3, seed: int = 0, k_max: int = 8) -> dict:
    """Sampled dimension of ``X' = r(f(S_z̄)) ∩ r(r(f(S_w̄)))``.

    ``r(f(S_z̄))`` is approximated by the reflection of k mapped points of
    ``S_z̄``, the double reflection by the reflection of k sample points of
    the first reflection of ``f(S_w̄)``; k grows until two consecutive
    estimates agree.  The value is an upper bound that can only drop as k
    grows.
    """
    if not f.all_exact:
        raise ValueError("double reflection needs a polynomial map")
    z, w = as_point(z), as_point(w)
    if not segre_contains(M, z, w):
        raise ValueError("z must lie on the Segre variety of w")
    n2 = Mp.n
    rng = random.Random(seed)
    history = []
    k = k_samples
    result = None
    while k <= k_max:
        E1 = [tuple(f.evaluate(sample_segre(M, z, rng))) for _ in range(k)]
        F2 = [tuple(f.evaluate(sample_segre(M, w, rng))) for _ in range(k)]
        polys2 = _reflection_polys(Mp, F2)
        E2 = []
        if polys2:
            blocks2 = list(_reflection_blocks(polys2, n2))
            for _ in range(k):
                pt = sample_reflection(polys2, n2, rng, blocks2)
                if pt is not None:
                    E2.append(pt)
        refl = first_reflection(Mp, E1 + E2, seed=rng.randrange(2 ** 31))
        history.append({"k": k, "dim": refl.dimension})
        if len(history) >= 2 and history[-1]["dim"] == history[-2]["dim"] and refl.dim is not None:
            result = refl
            break
        result = refl
        k += 1
    fz = tuple(f.evaluate(z))
    return {"dim": result.dimension, "stable": len(history) >= 2 and history[-1]["dim"] == history[-2]["dim"],
            "history": history, "flag": "SAMPLED", "f_z": [str(x) for x in fz],
            "f_z_in_X": _in_reflection(Mp, result, fz)}


def _in_reflection(Mp, refl: ReflectionSet, pt) -> bool:
    n = Mp.n
    vals = [ZERO] * n + [x.conj() for x in pt]
    return all(g.evaluate(vals).is_zero() for g in refl.ideal.gens)


# ---------------------------------------------------------------- transversality

def transversality_matrix(M: GraphManifold, k: int | None = None) -> tuple[Matrix, Ring]:
    """Stacked tangent frames of ``S_p̄_j`` at p, with p̄_j parametrized by ζ_j.

    Rows ``e_l ⊕ ∂_{w_l} Q̄(w, ζ_j, Q(ζ_j, t))`` for l ≤ m and j ≤ k = d+1;
    entries are polynomials in t and the ζ_j.
    """
    if not M.exact:
        raise ValueError("Segre transversality needs an exact polynomial graph (series rejected)")
    n, m, d = M.n, M.m, M.d
    k = d + 1 if k is None else k
    names = ["t%d" % (i + 1) for i in range(n)] + \
        ["s%d_%d" % (j + 1, i + 1) for j in range(k) for i in range(m)]
    T = Ring.holomorphic(names)
    tv = [T.var(i) for i in range(n)]
    Qb = M.conj_Q()
    dQb = [[qb.diff(l) for qb in Qb] for l in range(m)]
    rows = []
    for j in range(k):
        s = [T.var(n + j * m + i) for i in range(m)]
        qimg = [q.compose(T, tv + s + [T.zero()] * d) for q in M.Q]
        images = tv + s + qimg
        for l in range(m):
            row = [T.const(1) if c == l else T.zero() for c in range(m)]
            row += [dq.compose(T, images) for dq in dQb[l]]
            rows.append(row)
    return Matrix(rows, T), T


def segre_transversal(M: GraphManifold, p=None, seed: int = 0, trials: int = 6) -> dict:
    p = as_point(p) if p is not None else M.base_point
    M.require_on(p)
    if isinstance(M, ImplicitManifold):
        return _implicit_transversal(M, p, seed, trials)
    J, T = transversality_matrix(M)
    n = M.n
    rep = generic_rank_report(J, seed, trials)
    out = {"n": n, "k": M.d + 1, "trials": rep.trials}
    if rep.rank < n:
        certified = False
        if n <= 4:
            certified = exact_generic_rank(J) < n
        out.update(verdict="not_transversal", certified=certified, rank=rep.rank,
                   error_bound=rep.error_bound)
        return out
    wit = rep.points[0]
    out.update(verdict="transversal_in", certified=True, rank=n,
               witness={"t": [str(x) for x in wit[:n]], "zeta": [str(x) for x in wit[n:]]})
    # at the point itself: t fixed to p, ζ_j random
    Jp = Matrix([[x.partial_eval({i: p[i] for i in range(n)}) for x in r] for r in J.rows], T)
    rp = generic_rank_report(Jp, seed + 1, trials)
    out["rank_at_p"] = rp.rank
    if rp.rank == n:
        out["verdict"] = "transversal_at"
        out["witness_at"] = {"zeta": [str(x) for x in rp.points[0][n:]]}
    return out


def _implicit_transversal(M: ImplicitManifold, p, seed: int, trials: int) -> dict:
    """Tangent spaces ``ker ∂_zρ(p, q̄_j)`` of Segre varieties through p, for sampled q_j ∈ S_p̄.

    Only the pointwise test is available here: full rank is an exact
    certificate of ``transversal_at``, failure after all draws is evidence.
    """
    rng = random.Random(seed)
    n, d = M.n, M.codim
    gens = M.defining()
    grads = [[g.diff(k) for k in range(n)] for g in gens]
    budget = trials * (d + 1)
    vecs: list = []
    used = []
    for _ in range(budget):
        try:
            q = sample_segre(M, p, rng)
        except sampling.SamplingError:
            continue
        pt = list(p) + [x.conj() for x in q]
        D = [[h.evaluate(pt) for h in row] for row in grads]
        ker = nullspace(D)
        if not ker:
            continue
        grown = rank(vecs + ker)
        if grown > (rank(vecs) if vecs else 0):
            vecs = vecs + ker
            used.append(q)
        if grown == n:
            return {"n": n, "k": len(used), "trials": budget, "verdict": "transversal_at",
                    "certified": True, "rank": n, "rank_at_p": n,
                    "witness_at": {"q": [[str(x) for x in q] for q in used]}}
    return {"n": n, "k": len(used), "trials": budget, "verdict": "not_transversal",
            "certified": False, "rank": rank(vecs) if vecs else 0}
