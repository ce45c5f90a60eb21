"""Exact rational points on varieties that are affine in some block of unknowns.

The trick used throughout: find ``k`` variables in which every equation is
jointly of degree at most one, give the remaining variables random values,
and solve the resulting linear system exactly.  This covers graph manifolds
that are linear in the transverse variables and all the implicit examples we
ship; general real-point search on varieties is not attempted.
"""

from __future__ import annotations

from itertools import combinations
import random
from typing import Callable, Sequence

from .gaussrat import GaussRat, ZERO
from .linalg import Echelon
from .poly import Poly


class SamplingError(RuntimeError):
    pass


def is_affine_in(polys: Sequence[Poly], block: Sequence[int]) -> bool:
    block = tuple(block)
    for p in polys:
        for e in p.terms:
            if sum(e[i] for i in block) > 1:
                return False
    return True


def affine_blocks(polys: Sequence[Poly], candidates: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """All ``k``-subsets of ``candidates`` (lex order) in which the system is affine."""
    return [S for S in combinations(candidates, k) if is_affine_in(polys, S)]


def solve_block(polys: Sequence[Poly], block: Sequence[int], values: dict[int, GaussRat]):
    """Fix ``values`` and solve for ``block``; returns ``{var: value}`` or None.

    The linear system must be consistent with a unique solution.
    """
    block = tuple(block)
    col = {v: c for c, v in enumerate(block)}
    nb = len(block)
    e = Echelon(nb + 1)
    for p in polys:
        lin = p.partial_eval(values)
        row: dict[int, GaussRat] = {}
        for ex, c in lin.terms.items():
            nz = [i for i, x in enumerate(ex) if x]
            if not nz:
                row[nb] = row.get(nb, ZERO) + c
            elif len(nz) == 1 and nz[0] in col and ex[nz[0]] == 1:
                j = col[nz[0]]
                row[j] = row.get(j, ZERO) + c
            else:
                raise ValueError("system is not affine in the chosen block")
        if row:
            e.add(row)
    if nb in e.rows or e.rank < nb:
        return None
    sol = {}
    for pc, r in e.rows.items():
        sol[block[pc]] = -r.get(nb, ZERO)
    return sol


def sample_point(polys: Sequence[Poly], nvars: int, k: int, rng: random.Random,
                 draw: Callable[[random.Random, int], GaussRat],
                 candidates: Sequence[int] | None = None,
                 blocks: Sequence[tuple[int, ...]] | None = None,
                 fixed: dict[int, GaussRat] | None = None,
                 attempts: int = 40,
                 accept: Callable[[list], bool] | None = None) -> list[GaussRat]:
    """A common zero of ``polys`` with exact coordinates.

    ``draw(rng, var)`` supplies values for the free variables; ``fixed`` pins
    some of them.  ``accept`` may reject a candidate point (e.g. a singular one).
    """
    fixed = dict(fixed or {})
    if blocks is None:
        cand = [i for i in (candidates if candidates is not None else range(nvars)) if i not in fixed]
        blocks = affine_blocks(polys, cand, k)
    if not blocks:
        raise SamplingError("no affine block of size %d" % k)
    for attempt in range(attempts):
        S = blocks[attempt % len(blocks)]
        values = {}
        for v in range(nvars):
            if v in S:
                continue
            values[v] = fixed[v] if v in fixed else GaussRat.coerce(draw(rng, v))
        sol = solve_block(polys, S, values)
        if sol is None:
            continue
        pt = [values[v] if v in values else sol[v] for v in range(nvars)]
        if accept is not None and not accept(pt):
            continue
        return pt
    raise SamplingError("no rational point found after %d attempts" % attempts)


def draw_int(lo: int = -3, hi: int = 3):
    def draw(rng, _v):
        return GaussRat(rng.randint(lo, hi))
    return draw


def draw_gauss(bound: int = 3):
    def draw(rng, _v):
        return GaussRat(rng.randint(-bound, bound), rng.randint(-bound, bound))
    return draw
