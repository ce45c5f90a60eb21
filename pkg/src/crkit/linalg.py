"""Exact linear algebra over Q(i) and over polynomial entries.

Numeric (constant) systems go through :class:`Echelon`, an incremental sparse
reduced row echelon form.  Matrices with polynomial or rational-function
entries are wrapped in :class:`Matrix`; their generic rank is found by random
evaluation (:func:`generic_rank`) or, for small shapes, certified exactly by
fraction-free Bareiss elimination over the polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
import random
from typing import Callable, Iterable, Sequence

from .gaussrat import GaussRat, ONE, ZERO
from .poly import Poly, RatFn, Ring


class EvaluationExhausted(ArithmeticError):
    pass


# ---------------------------------------------------------------- constant matrices

class Echelon:
    """Incremental reduced row echelon form of sparse rows ``{col: GaussRat}``.

    Rows may be fed one at a time; :meth:`add` reports whether the row was
    independent of the ones before it.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, GaussRat]] = {}   # pivot col -> row with 1 at pivot

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if not v.is_zero()}
        # Fully reduced pivot rows have zeros in all other pivot columns,
        # so one pass over the pivot columns present in ``row`` suffices.
        for pc in sorted(set(row) & self.rows.keys()):
            v = row.get(pc)
            if v is None:
                continue
            for c, x in self.rows[pc].items():
                nv = row.get(c, ZERO) - v * x
                if nv.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def add(self, row) -> bool:
        if not isinstance(row, dict):
            row = {c: GaussRat.coerce(v) for c, v in enumerate(row)}
        else:
            row = {c: GaussRat.coerce(v) for c, v in row.items()}
        row = self.reduce(row)
        if not row:
            return False
        pc = min(row)
        inv = ONE / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for other in self.rows.values():
            v = other.get(pc)
            if v is None:
                continue
            for c, x in row.items():
                nv = other.get(c, ZERO) - v * x
                if nv.is_zero():
                    other.pop(c, None)
                else:
                    other[c] = nv
        self.rows[pc] = row
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def nullspace(self) -> list[list[GaussRat]]:
        """Kernel basis: one vector per free column, with a 1 in that column."""
        piv = self.rows
        basis = []
        for f in range(self.ncols):
            if f in piv:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for pc, row in piv.items():
                x = row.get(f)
                if x is not None:
                    v[pc] = -x
            basis.append(v)
        return basis


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    e = Echelon(len(rows[0]))
    for r in rows:
        e.add(list(r))
    return e.rank


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[GaussRat]]:
    """Right kernel of a constant matrix, exact."""
    if ncols is None:
        ncols = len(rows[0])
    e = Echelon(ncols)
    for r in rows:
        e.add(r if isinstance(r, dict) else list(r))
    return e.nullspace()


def clear_denominators(vec: Sequence[GaussRat]) -> list[GaussRat]:
    """Scale to Gaussian-integer entries with integer content 1."""
    dens = [x.parts[2] for x in vec if not x.is_zero()]
    if not dens:
        return list(vec)
    L = lcm(*dens)
    ints = []
    for x in vec:
        a, b, c = x.parts
        ints.append((a * (L // c), b * (L // c)))
    g = 0
    for a, b in ints:
        g = gcd(g, gcd(a, b))
    return [GaussRat(Fraction(a, g), Fraction(b, g)) for a, b in ints]


def det(rows: Sequence[Sequence[GaussRat]]) -> GaussRat:
    n = len(rows)
    a = [[GaussRat.coerce(x) for x in r] for r in rows]
    d = ONE
    for k in range(n):
        p = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if p is None:
            return ZERO
        if p != k:
            a[k], a[p] = a[p], a[k]
            d = -d
        d = d * a[k][k]
        inv = ONE / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f.is_zero():
                continue
            for j in range(k, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return d


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[GaussRat] | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    e = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        row = {c: GaussRat.coerce(v) for c, v in enumerate(r)}
        row[ncols] = GaussRat.coerce(b)
        e.add(row)
    if ncols in e.rows:
        return None
    x = [ZERO] * ncols
    for pc, row in e.rows.items():
        x[pc] = row.get(ncols, ZERO)
    return x


# ---------------------------------------------------------------- symbolic matrices

class Matrix:
    """Rectangular matrix of :class:`Poly` or :class:`RatFn` entries over one ring."""

    def __init__(self, rows: Sequence[Sequence], ring: Ring | None = None):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix must be rectangular")
        if ring is None:
            for r in rows:
                for x in r:
                    if isinstance(x, (Poly, RatFn)):
                        ring = x.ring
                        break
                if ring is not None:
                    break
        if ring is None:
            raise ValueError("cannot infer the variable context")
        self.ring = ring
        self.rows = [[x if isinstance(x, (Poly, RatFn)) else Poly.const(ring, x) for x in r] for r in rows]
        for r in self.rows:
            for x in r:
                if x.ring != ring:
                    raise ValueError("entries must share one variable context")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def evaluate(self, point) -> list[list[GaussRat]]:
        return [[x.evaluate(point) for x in r] for r in self.rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.ring)

    def transpose(self) -> "Matrix":
        r, c = self.shape
        return Matrix([[self.rows[i][j] for i in range(r)] for j in range(c)], self.ring)

    def polynomial_rows(self) -> list[list[Poly]]:
        """Rows scaled by their common denominator; same rank as the original."""
        out = []
        for r in self.rows:
            dens = [x.den for x in r if isinstance(x, RatFn) and not x.den.is_constant()]
            common = Poly.const(self.ring, 1)
            for d in dens:
                common = common * d
            row = []
            for x in r:
                if isinstance(x, RatFn):
                    num = x.num * common
                    row.append(num.exact_div(x.den) if not x.den.is_constant() else num * (ONE / x.den.constant_term()))
                else:
                    row.append(x * common)
            out.append(row)
        return out

    def degree_bound(self) -> int:
        """Upper bound on the degree of any entry after clearing row denominators."""
        return max((x.total_degree() for r in self.polynomial_rows() for x in r), default=0)

    def __repr__(self):
        return "Matrix(%r)" % ([[str(x) for x in r] for r in self.rows],)


def _random_point(rng: random.Random, nvars: int, bound: int) -> list[GaussRat]:
    return [GaussRat(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(nvars)]


@dataclass
class RankReport:
    rank: int
    trials: int
    points: list = field(default_factory=list)
    error_bound: float | None = None     # Schwartz-Zippel bound on P(rank < generic rank); None if not applicable
    certified: bool = False

    def as_dict(self) -> dict:
        return {"rank": self.rank, "trials": self.trials, "error_bound": self.error_bound,
                "certified": self.certified}


def generic_rank_report(m: Matrix, seed: int = 0, trials: int = 4, *,
                        start_bound: int = 16, attempts: int = 8,
                        sampler: Callable[[random.Random, int], Sequence] | None = None) -> RankReport:
    """Randomized generic rank.

    Each trial evaluates at a Gaussian-integer point with coordinates in
    ``[-B, B]``, ``B = start_bound * 2**trial``; points where a denominator
    vanishes are redrawn up to ``attempts`` times.  A custom ``sampler(rng, trial)``
    can supply points instead (for sampling on a variety); then no
    Schwartz-Zippel bound applies.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows, cols = m.shape
    full = min(rows, cols)
    rng = random.Random(seed)
    best = 0
    used = 0
    good_points = []
    sizes = []
    for t in range(trials):
        bound = start_bound * (2 ** t)
        val = None
        for _ in range(attempts):
            pt = sampler(rng, t) if sampler else _random_point(rng, m.ring.nvars, bound)
            try:
                val = m.evaluate(pt)
            except ZeroDivisionError:
                val = None
                continue
            break
        if val is None:
            continue
        used += 1
        sizes.append(2 * bound + 1)
        r = rank(val) if rows and cols else 0
        if r > best:
            best = r
            good_points = [pt]
        if best == full:
            break
    if used == 0:
        raise EvaluationExhausted("evaluation exhausted")
    if best == full:
        err = 0.0
    elif sampler is not None:
        err = None
    else:
        deg = (best + 1) * max(m.degree_bound(), 1)
        err = 1.0
        for s in sizes:
            err *= min(1.0, deg / s)
    return RankReport(best, used, good_points, err, best == full)


def generic_rank(m: Matrix, seed: int = 0, trials: int = 4, **kw) -> int:
    return generic_rank_report(m, seed, trials, **kw).rank


# -- exact certification by fraction-free elimination over the polynomial ring

def _bareiss(rows: list[list[Poly]], want_det=False):
    """Fraction-free elimination; returns (rank, det-or-None, pivot columns)."""
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    if not nr or not nc:
        return 0, None, []
    ring = a[0][0].ring
    prev = Poly.const(ring, 1)
    r = 0
    sign = 1
    pivcols = []
    for c in range(nc):
        if r == nr:
            break
        # smallest pivot keeps the intermediate polynomials small
        cands = [i for i in range(r, nr) if not a[i][c].is_zero()]
        if not cands:
            continue
        p = min(cands, key=lambda i: (len(a[i][c].terms), a[i][c].total_degree(), i))
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                num = piv * a[i][j] - a[i][c] * a[r][j]
                a[i][j] = num.exact_div(prev) if not prev.is_constant() else num * (ONE / prev.constant_term())
            a[i][c] = Poly.const(ring, 0)
        prev = piv
        pivcols.append(c)
        r += 1
    d = None
    if want_det and nr == nc:
        d = prev * sign if r == nr else Poly.const(ring, 0)
    return r, d, pivcols


def exact_generic_rank(m: Matrix) -> int:
    """Generic rank over the fraction field, exact (fraction-free elimination)."""
    rows = m.polynomial_rows()
    return _bareiss(rows)[0]


def determinant(m: Matrix) -> Poly:
    """Exact determinant of a square matrix (rows with denominators must not occur)."""
    r, c = m.shape
    if r != c:
        raise ValueError("determinant needs a square matrix")
    for row in m.rows:
        for x in row:
            if isinstance(x, RatFn) and not x.den.is_constant():
                raise ValueError("determinant of rational entries not supported; clear denominators first")
    rows = [[x if isinstance(x, Poly) else x.num * (ONE / x.den.constant_term()) for x in row] for row in m.rows]
    if r == 0:
        return Poly.const(m.ring, 1)
    return _bareiss(rows, want_det=True)[1]


def minors(m: Matrix, k: int, limit: int | None = None) -> Iterable[tuple[tuple, tuple, Poly]]:
    """Yield ``(row indices, col indices, determinant)`` of all k×k minors in lex order."""
    r, c = m.shape
    count = 0
    for ri in combinations(range(r), k):
        for ci in combinations(range(c), k):
            yield ri, ci, determinant(m.submatrix(ri, ci))
            count += 1
            if limit is not None and count >= limit:
                return


def nonzero_minor(m: Matrix, k: int) -> tuple[tuple, tuple, Poly] | None:
    """First k×k minor (lex order) that is not identically zero."""
    for ri, ci, d in minors(m, k):
        if not d.is_zero():
            return ri, ci, d
    return None


def inverse(rows: Sequence[Sequence]) -> list[list[GaussRat]]:
    """Exact inverse of a square constant matrix."""
    n = len(rows)
    cols = []
    for j in range(n):
        x = solve(rows, [ONE if i == j else ZERO for i in range(n)])
        if x is None or rank(rows) < n:
            raise ZeroDivisionError("matrix is singular")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[GaussRat]]:
    return [[sum((GaussRat.coerce(a[i][k]) * b[k][j] for k in range(len(b))), ZERO)
             for j in range(len(b[0]))] for i in range(len(a))]
