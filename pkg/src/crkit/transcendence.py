"""Algebraic dependence of power series over C(z) and transcendence-degree estimates.

A relation ``P(z, f(z)) ≡ 0`` with ``P`` of bidegree at most ``(D_z, D_x)``
is a kernel vector of a linear system on the coefficients of P.  When every
component is a genuine polynomial the system is exact and so is the answer.
For truncated series only the coefficients through order N are known; a
kernel vector is accepted only if the kernel dimension is the same at
orders N and N - h, otherwise the bidegree box is reported as undetermined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .gaussrat import ZERO
from .linalg import Echelon
from .manifold import GraphManifold
from .poly import GRLEX, Poly, Ring
from .series import SeriesMap, generator

STABILITY_LAG = 2


@dataclass
class DependenceCertificate:
    poly: Poly
    bidegree: tuple[int, int]
    residual_order: int | None      # None: the relation holds exactly (no truncation)
    components: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"relation": str(self.poly), "bidegree": list(self.bidegree),
                "residual_order": "exact" if self.residual_order is None else self.residual_order,
                "components": [c + 1 for c in self.components]}


@dataclass
class SearchOutcome:
    certificate: DependenceCertificate | None
    boxes_checked: list = field(default_factory=list)
    undetermined: list = field(default_factory=list)
    exact: bool = False


def _monos(nv: int, D: int):
    out = []
    for deg in range(D + 1):
        for combo in combinations_with_replacement(range(nv), deg):
            e = [0] * nv
            for c in combo:
                e[c] += 1
            out.append(tuple(e))
    return out


def relation_ring(n_in: int, comps: Sequence[int]) -> Ring:
    return Ring.holomorphic(["z%d" % (k + 1) for k in range(n_in)] + ["x%d" % (c + 1) for c in comps])


class _PowerCache:
    def __init__(self, fs: Sequence[Poly], order: int | None):
        self.fs = fs
        self.order = order
        self.cache: dict = {}

    def get(self, gamma: tuple) -> Poly:
        if gamma in self.cache:
            return self.cache[gamma]
        if not any(gamma):
            val = Poly.const(self.fs[0].ring, 1)
        else:
            k = max(i for i, g in enumerate(gamma) if g)
            prev = list(gamma)
            prev[k] -= 1
            base = self.get(tuple(prev))
            f = self.fs[k]
            val = base.mul_truncated(f, self.order) if self.order is not None else base * f
        self.cache[gamma] = val
        return val


def _columns(fmap: SeriesMap, comps, dz, dx, powers: _PowerCache, order):
    R = fmap.ring
    cols = []
    for gamma in _monos(len(comps), dx):
        fg = powers.get(gamma)
        for alpha in _monos(fmap.n_in, dz):
            za = Poly.monomial(R, alpha)
            prod = fg.mul_truncated(za, order) if order is not None else fg * za
            cols.append(((alpha, gamma), prod))
    return cols


def _check_relation(fmap: SeriesMap, comps, P: Poly, order) -> bool:
    R = fmap.ring
    images = [R.var(k) for k in range(fmap.n_in)] + [fmap.components[c] for c in comps]
    res = P.compose(R, images, order=order)
    return res.is_zero()


def _pick(kernel, cols, must_involve: int | None):
    cands = []
    for vec in kernel:
        support = [j for j, x in enumerate(vec) if not x.is_zero()]
        if must_involve is not None and not any(cols[j][0][1][must_involve] for j in support):
            continue
        degs = max(sum(cols[j][0][0]) + sum(cols[j][0][1]) for j in support)
        cands.append((degs, len(support), vec))
    if not cands:
        return None
    cands.sort(key=lambda c: (c[0], c[1]))
    return cands[0][2]


def search_dependence(fmap: SeriesMap, comps: Sequence[int] | None = None, D_z: int = 4, D_x: int = 4,
                      N: int | None = None, must_involve: int | None = None,
                      lag: int = STABILITY_LAG) -> SearchOutcome:
    """Look for a relation among the chosen components, box by box.

    Boxes ``(dz, dx)`` are visited with dz ascending, then dx ascending; the
    first box giving an accepted kernel vector wins.  ``must_involve`` is a
    position in ``comps`` whose variable has to occur in the relation.
    """
    comps = list(range(fmap.n_out)) if comps is None else list(comps)
    if fmap.numeric:
        raise ValueError("float series need a tolerance; exact search refuses them")
    N = fmap.order if N is None else N
    if N > fmap.order:
        raise ValueError("search order exceeds the series order")
    exact = all(fmap.exact[c] for c in comps)
    order = None if exact else N
    fs = [fmap.components[c] if exact else fmap.components[c].truncate(N) for c in comps]
    powers = _PowerCache(fs, order)
    out = SearchOutcome(None, exact=exact)
    RR = relation_ring(fmap.n_in, comps)
    for dz in range(D_z + 1):
        for dx in range(1, D_x + 1):
            cols = _columns(fmap, comps, dz, dx, powers, order)
            rows: dict = {}
            for j, (_, poly) in enumerate(cols):
                for e, v in poly.terms.items():
                    rows.setdefault(e, {})[j] = v
            ech = Echelon(len(cols))
            rank_lag = None
            for e in sorted(rows, key=lambda e: (sum(e), e)):
                if not exact and rank_lag is None and sum(e) > N - lag:
                    rank_lag = ech.rank
                ech.add(rows[e])
            if rank_lag is None:
                rank_lag = ech.rank
            nullity = len(cols) - ech.rank
            out.boxes_checked.append([dz, dx])
            if nullity == 0:
                continue
            if not exact and (len(cols) - rank_lag) != nullity:
                out.undetermined.append([dz, dx])
                continue
            vec = _pick(ech.nullspace(), cols, must_involve)
            if vec is None:
                continue
            terms = {}
            for j, x in enumerate(vec):
                if not x.is_zero():
                    (alpha, gamma), _ = cols[j]
                    terms[alpha + gamma] = x
            P = Poly(RR, terms).monic(GRLEX)
            if not _check_relation(fmap, comps, P, order):
                raise AssertionError("certificate failed re-verification")
            out.certificate = DependenceCertificate(P, (dz, dx), order, tuple(comps))
            return out
    return out


def dependence_search(fmap: SeriesMap, D_z: int = 4, D_x: int = 4, N: int | None = None,
                      comps: Sequence[int] | None = None) -> DependenceCertificate | None:
    return search_dependence(fmap, comps, D_z, D_x, N).certificate


def trdeg_estimate(fmap: SeriesMap, bounds: tuple[int, int] = (4, 4), N: int | None = None) -> dict:
    """Greedy independent subset in input order; dependents carry certificates."""
    D_z, D_x = bounds
    independent: list[int] = []
    certs = []
    undetermined = []
    evidence = False
    for j in range(fmap.n_out):
        trial = independent + [j]
        res = search_dependence(fmap, trial, D_z, D_x, N, must_involve=len(trial) - 1)
        if res.undetermined:
            undetermined.append({"component": j + 1, "boxes": res.undetermined})
        if res.certificate is not None:
            certs.append({"component": j + 1, **res.certificate.as_dict()})
        else:
            independent.append(j)
            if not res.exact:
                evidence = True
    return {"estimate": len(independent), "independent_subset": [j + 1 for j in independent],
            "certificates": certs, "undetermined": undetermined, "bounds": [D_z, D_x],
            "order": fmap.order if N is None else N,
            "label": "≥-certified for dependencies, bound-limited for independence",
            "evidence_level": evidence}


# ---------------------------------------------------------------- perturbation

def perturbation_builder(f: SeriesMap, a: int, kappa: int, slots: Sequence[int] | None = None,
                         base: str = "sin") -> SeriesMap:
    """``φ∘f`` with ``φ(x) = (x_{s1} + ϖ(x_{s1}), x_{s2} + ϖ∘²(x_{s1}), …)``, ``ϖ = base^a``."""
    if a < 1:
        raise ValueError("a must be >= 1")
    slots = list(range(kappa)) if slots is None else list(slots)
    if len(slots) != kappa:
        raise ValueError("need exactly kappa slots")
    if not slots:
        return f
    N = f.order
    first = f.components[slots[0]].truncate(N)
    if first.is_constant():
        raise ValueError("f is constant in its first straightened component")
    if first.constant_term() != ZERO:
        raise ValueError("the first straightened component must vanish at the origin")
    comps = list(f.components)
    exact = list(f.exact)
    for j, s in enumerate(slots):
        w_series, _ = generator("%s^%d@%d" % (base, a, j + 1), 1, N)
        pert = w_series.compose(f.ring, [first], order=N)
        comps[s] = comps[s] + pert
        if not pert.is_zero():
            exact[s] = False
    return SeriesMap(f.n_in, N, comps, exact, f.numeric)


# ---------------------------------------------------------------- containment

def _graph_of(M):
    if isinstance(M, GraphManifold):
        return M
    raise ValueError("source manifold must be in graph form")


def maps_into_residuals(f: SeriesMap, M: GraphManifold, Mp, N: int) -> list[Poly]:
    """``P'_j(f(t), f̄(τ))`` with ``ξ = Q(ζ_w, t)`` substituted, truncated at N."""
    M = _graph_of(M)
    if f.n_in != M.n or f.n_out != Mp.n:
        raise ValueError("map dimensions do not match the manifolds")
    R = M.ring
    n = M.n
    t_images = [R.var(k) for k in range(n)]
    tau_images = [R.var(n + k) for k in range(n)]
    fz = [c.compose(R, t_images, order=None if e else N) for c, e in zip(f.components, f.exact)]
    fb = [c.compose(R, tau_images, order=None if e else N)
          for c, e in zip(f.conjugate_coeffs(), f.exact)]
    out = []
    for g in Mp.defining():
        r = g.compose(R, fz + fb, order=N)
        r = r.subs({M.xi_idx[l]: M.Q[l] for l in range(M.d)}, order=N).truncate(N)
        out.append(r)
    return out


def check_maps_into(f: SeriesMap, M, Mp, N: int | None = None) -> bool:
    N = f.order if N is None else N
    M = _graph_of(M)
    fb = f.evaluate(M.base_point) if f.all_exact else None
    if fb is not None and Mp.base_point is not None and not Mp.contains(fb):
        return False
    return all(r.is_zero() for r in maps_into_residuals(f, M, Mp, N))


class ContainmentError(ValueError):
    pass


def trdeg_inequality_check(f: SeriesMap, M, Mp, kappa_target: int | None = None,
                           bounds: tuple[int, int] = (4, 4), N: int | None = None) -> dict:
    """``trdeg estimate(f) ≤ κ(M')`` on a map already known to send M into M'."""
    if not check_maps_into(f, M, Mp, N):
        raise ContainmentError("f does not map M into M'")
    if kappa_target is None:
        from .crfields import kappa
        kappa_target = kappa(Mp).kappa
    est = trdeg_estimate(f, bounds, N)
    return {"estimate": est["estimate"], "kappa": kappa_target,
            "holds": est["estimate"] <= kappa_target, "sharp": est["estimate"] == kappa_target,
            "trdeg": est}
