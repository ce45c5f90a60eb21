"""CR vector fields, Lie brackets, minimality, holomorphic degeneracy and κ."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
import random
from typing import Sequence

from .gaussrat import GaussRat, ONE, ZERO
from .ideal import Ideal, Membership, groebner, ideal_member
from .linalg import (Echelon, Matrix, determinant, exact_generic_rank, generic_rank_report,
                     nullspace, rank)
from .manifold import GraphManifold, ImplicitManifold, as_point, complexified
from .poly import GRLEX, Poly, Ring, elimination_order
from . import sampling


class VectorField:
    """Derivation ``Σ coeffs[k] ∂/∂(var k)`` with polynomial coefficients."""

    __slots__ = ("ring", "coeffs", "kind", "label")

    def __init__(self, ring: Ring, coeffs: Sequence[Poly], kind: str = "complexified", label: str = ""):
        if len(coeffs) != ring.nvars:
            raise ValueError("need one coefficient per variable")
        self.ring = ring
        self.coeffs = [c if isinstance(c, Poly) else Poly.const(ring, c) for c in coeffs]
        for c in self.coeffs:
            if c.ring != ring:
                raise ValueError("coefficients must live in the field's ring")
        self.kind = kind
        self.label = label

    @classmethod
    def parse(cls, ring: Ring, spec: dict, kind="complexified", label="") -> "VectorField":
        """From ``{var name: coefficient text}``."""
        co = [ring.zero()] * ring.nvars
        for name, text in spec.items():
            co[ring.index(name)] = ring.parse(text) if isinstance(text, str) else text
        return cls(ring, co, kind, label)

    def __call__(self, p: Poly) -> Poly:
        out = self.ring.zero()
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            dp = p.diff(k)
            if not dp.is_zero():
                out = out + c * dp
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        return VectorField(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.kind)

    def __sub__(self, other):
        return VectorField(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.kind)

    def scale(self, f) -> "VectorField":
        return VectorField(self.ring, [c * f for c in self.coeffs], self.kind, self.label)

    def evaluate(self, point) -> list[GaussRat]:
        return [c.evaluate(point) for c in self.coeffs]

    def conjugate(self) -> "VectorField":
        """Conjugate field: swap paired slots and conjugate coefficients."""
        partners = self.ring.partners
        co = [self.ring.zero()] * self.ring.nvars
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            j = partners[k]
            if j is None:
                raise ValueError("no conjugate partner for %s" % self.ring.names[k])
            co[j] = c.conjugate()
        kind = {"(1,0)": "(0,1)", "(0,1)": "(1,0)"}.get(self.kind, self.kind)
        return VectorField(self.ring, co, kind)

    def flat(self) -> dict:
        """Coefficients as a sparse vector over (slot, monomial)."""
        out = {}
        for k, c in enumerate(self.coeffs):
            for e, v in c.terms.items():
                out[(k, e)] = v
        return out

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            parts.append("(%s)*d/d%s" % (c, self.ring.names[k]))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    if X.ring != Y.ring:
        raise ValueError("fields live in different rings")
    co = [X(Y.coeffs[k]) - Y(X.coeffs[k]) for k in range(X.ring.nvars)]
    return VectorField(X.ring, co, "complexified")


# ---------------------------------------------------------------- CR fields

def _tangency_basis(M):
    cache = M.__dict__.setdefault("_cache", {})
    if "tangency_gb" not in cache:
        if isinstance(M, GraphManifold):
            order = elimination_order(M.xi_idx)
            cache["tangency_gb"] = groebner(Ideal(M.defining(), order, ring=M.ring))
        else:
            cache["tangency_gb"] = groebner(Ideal(M.defining(), GRLEX, ring=M.ring), degree_cap=12)
    return cache["tangency_gb"]


def is_tangent(M, X: VectorField) -> Membership:
    """``X P ∈ 𝓙`` for every generator (ideal membership)."""
    gb = _tangency_basis(M)
    verdicts = [ideal_member(X(g), gb) for g in M.defining()]
    if all(v == Membership.YES for v in verdicts):
        return Membership.YES
    if any(v == Membership.NO for v in verdicts):
        return Membership.NO
    return Membership.UNKNOWN


def _kernel_fields(gens: Sequence[Poly], ring: Ring, slots: Sequence[int], point, kind: str) -> list[VectorField]:
    """Polynomial kernel of ``(∂g_i/∂slot_k)`` built from adjugates of a nonsingular minor.

    The minor is the d×d one of largest modulus at ``point`` (first in lex
    order on ties); each free slot j contributes ``det(A) ∂_j - adj(A) b_j ∂_C``.
    """
    from .linalg import det
    Jp = [[g.diff(s).evaluate(point) for s in slots] for g in gens]
    d = rank(Jp)
    best = None
    for cols in combinations(range(len(slots)), d):
        for rows in combinations(range(len(gens)), d):
            a = det([[Jp[i][j] for j in cols] for i in rows]).abs2()
            if a and (best is None or a > best[0]):
                best = (a, cols, rows)
    if best is None:
        return []
    _, cols, rows = best
    A = Matrix([[gens[i].diff(slots[j]) for j in cols] for i in rows], ring)
    detA = determinant(A) if d else ring.one()
    # adjugate entries: adj[a][b] = (-1)^(a+b) det(A without row b, col a)
    adj = [[None] * d for _ in range(d)]
    for a in range(d):
        for b in range(d):
            sub = Matrix([[A[i, j] for j in range(d) if j != a] for i in range(d) if i != b], ring) if d > 1 else None
            minor = determinant(sub) if d > 1 else ring.one()
            adj[a][b] = minor * (1 if (a + b) % 2 == 0 else -1)
    fields = []
    for j in range(len(slots)):
        if j in cols:
            continue
        bj = [gens[i].diff(slots[j]) for i in rows]
        co = [ring.zero()] * ring.nvars
        co[slots[j]] = detA
        for a in range(d):
            s = ring.zero()
            for b in range(d):
                s = s + adj[a][b] * bj[b]
            co[slots[cols[a]]] = -s
        fields.append(VectorField(ring, co, kind))
    return fields


class NotCRGenericFields(ValueError):
    pass


def cr_vector_fields(M, route: str | None = None, seed: int = 0) -> list[VectorField]:
    """Basis of T^{0,1}M as complexified fields on (z, ζ); conjugate them for T^{1,0}.

    ``route="graph"`` uses ``∂/∂ζ_w + Q_ζ ∂/∂ξ`` (graph form only);
    ``route="kernel"`` uses the adjugate kernel of ``∂P/∂ζ``.
    """
    if route is None:
        route = "graph" if isinstance(M, GraphManifold) else "kernel"
    R = M.ring
    n = M.n
    if route == "graph":
        if not isinstance(M, GraphManifold):
            raise ValueError("graph route needs a graph manifold")
        fields = []
        for j, zj in enumerate(M.zw_idx):
            co = [R.zero()] * (2 * n)
            co[zj] = R.one()
            for l, xl in enumerate(M.xi_idx):
                co[xl] = M.Q[l].diff(zj)
            fields.append(VectorField(R, co, "(0,1)", "Lb%d" % (j + 1)))
    else:
        base = M.base_point if M.base_point is not None else None
        if base is None:
            raise ValueError("need a base point to choose the kernel minor")
        fields = _kernel_fields(M.defining(), R, list(range(n, 2 * n)), complexified(base), "(0,1)")
        for j, f in enumerate(fields):
            f.label = "Lb%d" % (j + 1)
    m = n - M.codim
    if len(fields) != m:
        raise NotCRGenericFields("not CR-generic: found %d fields, expected %d" % (len(fields), m))
    coeff = Matrix([[f.coeffs[k] for k in range(n, 2 * n)] for f in fields], R) if fields else None
    if coeff is not None:
        rng = random.Random(seed)
        rep = generic_rank_report(coeff, seed, 4, sampler=lambda r, t: M.sample_complex(rng))
        if rep.rank != m:
            raise NotCRGenericFields("not CR-generic: CR fields are dependent")
    return fields


def conjugate_fields(fields: Sequence[VectorField]) -> list[VectorField]:
    out = []
    for f in fields:
        g = f.conjugate()
        g.kind = "(1,0)"
        g.label = f.label.replace("Lb", "L")
        out.append(g)
    return out


def cr_fields_both(M, route: str | None = None, seed: int = 0) -> list[VectorField]:
    """``L̄_1..L̄_m, L_1..L_m``; for the kernel route on a graph the L come from the conjugate equations."""
    lb = cr_vector_fields(M, route, seed)
    if route == "kernel" and isinstance(M, GraphManifold):
        conj_gens = [g.conjugate() for g in M.defining()]
        n = M.n
        ls = _kernel_fields(conj_gens, M.ring, list(range(n)), complexified(M.base_point), "(1,0)")
        for j, f in enumerate(ls):
            f.label = "L%d" % (j + 1)
        return lb + ls
    return lb + conjugate_fields(lb)


# ---------------------------------------------------------------- Lie saturation

@dataclass
class LieReport:
    depth_reached: int
    span_rank_at_p: int
    target_rank: int
    verdict: str
    bracket_words: list = field(default_factory=list)
    certified: bool = False

    def as_dict(self) -> dict:
        return {"depth_reached": self.depth_reached, "span_rank_at_p": self.span_rank_at_p,
                "target_rank": self.target_rank, "verdict": self.verdict,
                "bracket_words": self.bracket_words}


def _word_str(word) -> str:
    if isinstance(word, str):
        return word
    return "[%s,%s]" % (_word_str(word[0]), _word_str(word[1]))


def lie_saturation_fields(gens: Sequence[VectorField], point, target: int, depth_cap: int,
                          labels: Sequence[str] | None = None) -> LieReport:
    """Bracket right-normed words until the span at ``point`` reaches ``target``.

    Words whose field is a constant-coefficient combination of fields already
    kept are dropped: brackets with them add nothing new.  Verdicts:
    ``minimal`` (full rank), ``not_minimal`` (no new fields at some depth: the
    bracket algebra is closed and its span at the point is short), ``unknown``
    (cap hit).  A span that stalls for a few depths is not taken as evidence
    either way, since vanishing to high order at the point delays growth.
    """
    labels = labels or [g.label or "X%d" % (i + 1) for i, g in enumerate(gens)]
    nvars = gens[0].ring.nvars
    span = Echelon(nvars)
    algebra = Echelon(0)
    keymap: dict = {}

    def flat_row(f: VectorField):
        row = {}
        for key, v in f.flat().items():
            idx = keymap.setdefault(key, len(keymap))
            row[idx] = v
        return row

    words = []
    layer = []
    for g, lab in zip(gens, labels):
        algebra.ncols = len(keymap) + 1
        if algebra.add(flat_row(g)):
            layer.append((lab, g))
            if span.add(g.evaluate(point)):
                words.append(lab)
    depth = 1
    while True:
        if span.rank >= target:
            return LieReport(depth, span.rank, target, "minimal", words, True)
        if not layer:
            return LieReport(depth, span.rank, target, "not_minimal", words, True)
        if depth >= depth_cap:
            return LieReport(depth, span.rank, target, "unknown", words)
        depth += 1
        new_layer = []
        for g, lab in zip(gens, labels):
            for w, f in layer:
                b = lie_bracket(g, f)
                if b.is_zero():
                    continue
                algebra.ncols = len(keymap) + 1
                if not algebra.add(flat_row(b)):
                    continue
                word = (lab, w)
                new_layer.append((word, b))
                if span.add(b.evaluate(point)):
                    words.append(_word_str(word))
        layer = new_layer


def lie_saturation(M, p=None, depth_cap: int | None = None, route: str | None = None,
                   seed: int = 0) -> LieReport:
    """Span of iterated brackets of ``L̄, L`` at ``(p, p̄)`` versus ``dim_R M = 2n - d``."""
    p = as_point(p) if p is not None else M.base_point
    M.require_on(p)
    fields = cr_fields_both(M, route, seed)
    n = M.n
    target = 2 * n - M.codim
    cap = depth_cap if depth_cap is not None else 2 * n
    return lie_saturation_fields(fields, complexified(p), target, cap)


# ---------------------------------------------------------------- holomorphic fields

@dataclass
class HolFieldsReport:
    degree_bound: int
    basis: list
    generic_rank: int
    complete: bool = True

    @property
    def nondegenerate(self) -> bool:
        return not self.basis

    def as_dict(self) -> dict:
        return {"degree_bound": self.degree_bound, "dimension": len(self.basis),
                "generic_rank": self.generic_rank, "basis": [str(f) for f in self.basis],
                "verdict": ("holomorphically nondegenerate up to degree %d" % self.degree_bound)
                if not self.basis else "holomorphically degenerate"}


def _monomials(nv: int, D: int):
    out = []
    for deg in range(D + 1):
        for combo in combinations_with_replacement(range(nv), deg):
            e = [0] * nv
            for c in combo:
                e[c] += 1
            out.append(tuple(e))
    return out


def tangent_hol_fields(M, D: int = 3, seed: int = 0) -> HolFieldsReport:
    """Holomorphic fields ``Σ a_j(z) ∂/∂z_j`` with ``deg a_j ≤ D`` tangent to M."""
    if D < 0:
        raise ValueError("degree bound must be >= 0")
    R = M.ring
    n = M.n
    gb = _tangency_basis(M)
    mons = _monomials(n, D)
    unknowns = [(j, a) for j in range(n) for a in mons]
    keymap: dict = {}
    rows_by_key: dict = {}
    gens = M.defining()
    for col, (j, a) in enumerate(unknowns):
        za = Poly.monomial(R, a + (0,) * n)
        for i, g in enumerate(gens):
            nf = gb.normal_form(za * g.diff(j))
            for e, v in nf.terms.items():
                rows_by_key.setdefault((i, e), {})[col] = v
    if rows_by_key:
        kernel = nullspace(list(rows_by_key.values()), len(unknowns))
    else:
        kernel = [[ONE if c == k else ZERO for c in range(len(unknowns))] for k in range(len(unknowns))]
    basis = []
    for vec in kernel:
        co = [R.zero()] * (2 * n)
        for col, x in enumerate(vec):
            if x.is_zero():
                continue
            j, a = unknowns[col]
            co[j] = co[j] + Poly.monomial(R, a + (0,) * n, x)
        basis.append(VectorField(R, co, "(1,0)"))
    grank = 0
    if basis:
        mat = Matrix([[f.coeffs[k] for k in range(n)] for f in basis], R)
        grank = generic_rank_report(mat, seed, 4).rank
    return HolFieldsReport(D, basis, grank, gb.complete)


# ---------------------------------------------------------------- kappa

@dataclass
class KappaReport:
    kappa: int
    chi: int
    n: int
    m: int
    certified: bool
    witness_minor: dict | None
    exceptional_gens: list
    exceptional_complete: bool
    stable: bool = True
    note: str = ""

    def as_dict(self) -> dict:
        return {"kappa": self.kappa, "chi": self.chi, "n": self.n, "m": self.m,
                "certified": self.certified, "witness_minor": self.witness_minor,
                "exceptional_gens": [str(g) for g in self.exceptional_gens],
                "exceptional_complete": self.exceptional_complete, "stable": self.stable,
                "note": self.note}


def q_family(M: GraphManifold) -> list[tuple[int, tuple, Poly]]:
    """``(l, β, Q_{l,β}(t))`` from ``Q_l = Σ_β ζ_w^β Q_{l,β}(t)``, sorted."""
    out = []
    for l, q in enumerate(M.Q):
        for beta, c in sorted(q.split(M.zw_idx).items()):
            if not c.is_zero():
                out.append((l, beta, c))
    return out


def q_jacobian(M: GraphManifold) -> tuple[Matrix, list]:
    fam = q_family(M)
    rows = [[c.diff(k) for k in M.t_idx] for _, _, c in fam]
    return Matrix(rows, M.ring), fam


def _witness(J: Matrix, seed: int):
    """Rows/cols of a minor that is nonzero at a random point, with its determinant."""
    rng = random.Random(seed)
    for _ in range(6):
        pt = [GaussRat(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(J.ring.nvars)]
        val = J.evaluate(pt)
        e = Echelon(J.shape[1])
        rows = [i for i, r in enumerate(val) if e.add(list(r))]
        if not rows:
            continue
        ec = Echelon(len(rows))
        cols = [j for j in range(J.shape[1]) if ec.add([val[i][j] for i in rows])]
        return rows, cols, pt
    return [], [], None


def kappa(M: GraphManifold, seed: int = 0, trials: int = 4, minor_limit: int = 200,
          _check_stability: bool = True) -> KappaReport:
    """κ = n - χ with χ the generic rank of the Jacobian of the ``Q_{l,β}`` family."""
    J, fam = q_jacobian(M)
    n = M.n
    if not fam:
        chi = 0
        return KappaReport(n, 0, n, M.m, True, None, [], True)
    rep = generic_rank_report(J, seed, trials)
    rows, cols, _ = _witness(J, seed)
    chi = max(rep.rank, len(rows))
    certified = rep.certified or len(rows) == min(J.shape)
    if not certified and J.shape[0] <= 16 and n <= 6:
        certified = exact_generic_rank(J) == chi
    witness = None
    if rows:
        dm = determinant(J.submatrix(rows, cols))
        witness = {"rows": [[fam[i][0] + 1, list(fam[i][1])] for i in rows],
                   "cols": [M.ring.names[c] for c in cols], "det": str(dm)}
    gens = []
    complete = True
    count = 0
    for ri in combinations(range(J.shape[0]), chi):
        for ci in combinations(range(n), chi):
            if count >= minor_limit:
                complete = False
                break
            dm = determinant(J.submatrix(ri, ci))
            count += 1
            if not dm.is_zero():
                dm = dm.monic()
                if dm not in gens:
                    gens.append(dm)
        if not complete:
            break
    report = KappaReport(n - chi, chi, n, M.m, certified, witness, gens, complete)
    if not M.exact and _check_stability and M.source is not None:
        other = kappa(M.with_order(M.series_order + 1), seed, trials, minor_limit=0, _check_stability=False)
        report.stable = other.chi == chi
        report.certified = False
        if not report.stable:
            report.note = "kappa lower bound only"
    return report


# ---------------------------------------------------------------- straightening

def constant_kernel(M: GraphManifold) -> list[list[GaussRat]]:
    """Constant vectors c with ``Σ c_k ∂Q_{l,β}/∂t_k ≡ 0`` for every (l, β)."""
    J, _ = q_jacobian(M)
    n = M.n
    rows: dict = {}
    for i, r in enumerate(J.rows):
        for k, entry in enumerate(r):
            for e, v in entry.terms.items():
                rows.setdefault((i, e), {})[k] = v
    if not rows:
        return [[ONE if j == k else ZERO for j in range(n)] for k in range(n)]
    return nullspace(list(rows.values()), n)


def straighten_linear(M: GraphManifold, seed: int = 0) -> GraphManifold | None:
    """Split off constant kernel directions one at a time: ``M ≅ Δ^k × M̲``.

    Returns M̲ (with ``straightened`` listing the directions removed) or None
    when the kernel has no constant vector.  Raises if κ = 0.
    """
    k0 = kappa(M, seed).kappa
    if k0 < 1:
        raise ValueError("precondition failed: kappa is 0")
    cur = M
    directions = []
    while True:
        if cur.m == 0:
            break
        ker = constant_kernel(cur)
        pick = None
        for c in ker:
            for k in cur.w_idx:
                if not c[k].is_zero():
                    pick = (c, k)
                    break
            if pick:
                break
        if pick is None:
            break
        c, k = pick
        c = [x / c[k] for x in c]
        nxt = _drop_direction(cur, c, k)
        if nxt is None:
            break
        directions.append([str(x) for x in c])
        cur = nxt
        if kappa(cur, seed).kappa == 0:
            break
    if not directions:
        return None
    cur.straightened = directions
    return cur


def _drop_direction(M: GraphManifold, c: Sequence[GaussRat], k: int) -> GraphManifold | None:
    n, m = M.n, M.m
    R = M.ring
    # t = t' + c t'_k (with t'_k in slot k), same for the conjugates
    images = []
    for j in range(n):
        v = R.var(j)
        if j != k:
            v = v + R.var(k) * c[j]
        images.append(v)
    for j in range(n):
        v = R.var(n + j)
        if j != k:
            v = v + R.var(n + k) * c[j].conj()
        images.append(v)
    Qn = []
    for l, q in enumerate(M.Q):
        qq = q.compose(R, images, order=M.series_order)
        qq = qq - R.var(n + k) * c[m + l].conj()
        Qn.append(qq)
    gone = {k, n + k}
    if any(q.support() & gone for q in Qn):
        return None
    R2 = Ring.complex(n - 1)
    keep = [j for j in range(n) if j != k]
    index_map = [None] * (2 * n)
    for new, old in enumerate(keep):
        index_map[old] = new
        index_map[n + old] = (n - 1) + new
    index_map[k] = 0
    index_map[n + k] = n - 1
    Q2 = [q.embed(R2, index_map) for q in Qn]
    bp = [x for j, x in enumerate(M.base_point) if j != k]
    return GraphManifold(n - 1, m - 1, Q2, name=(M.name + "_straightened") if M.name else "",
                         series_order=M.series_order, base_point=_project_base(M, c, k))


def _project_base(M, c, k):
    p = M.base_point
    return [p[j] - c[j] * p[k] for j in range(M.n) if j != k]
