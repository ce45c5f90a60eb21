"""Degree-capped Buchberger algorithm, ideal membership and elimination."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .gaussrat import ONE
from .poly import GRLEX, MonomialOrder, Poly, elimination_order


class Membership(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Ideal:
    """Finitely generated ideal; zero generators are dropped."""

    def __init__(self, gens: Iterable[Poly], order: MonomialOrder = GRLEX, ring=None):
        gens = [g for g in gens if not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("need a ring for the zero ideal")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generators must share one variable context")
        self.ring = ring
        self.gens = gens
        self.order = order

    def is_zero(self) -> bool:
        return not self.gens

    def __repr__(self):
        return "Ideal<%s>" % ", ".join(str(g) for g in self.gens)


@dataclass
class GroebnerBasis:
    basis: list[Poly]
    order: MonomialOrder
    complete: bool
    degree_cap: int | None

    @property
    def ring(self):
        return self.basis[0].ring if self.basis else None

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.basis)

    def normal_form(self, p: Poly) -> Poly:
        if not self.basis:
            return p
        return p.divmod(self.basis, self.order)[1]

    def ideal(self) -> Ideal:
        return Ideal(self.basis, self.order, ring=self.ring)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _spoly(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    L = _lcm(ef, eg)
    mf = Poly.monomial(f.ring, tuple(x - y for x, y in zip(L, ef)), ONE / cf)
    mg = Poly.monomial(f.ring, tuple(x - y for x, y in zip(L, eg)), ONE / cg)
    return mf * f - mg * g


def _interreduce(basis: list[Poly], order: MonomialOrder) -> list[Poly]:
    key = order.key
    basis = [b.monic(order) for b in basis]
    # drop elements whose leading monomial is divisible by another one
    lts = [b.leading(order)[0] for b in basis]
    keep = []
    for i, b in enumerate(basis):
        redundant = False
        for j in range(len(basis)):
            if j == i:
                continue
            if _divides(lts[j], lts[i]) and (lts[j] != lts[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(b)
    out = []
    for i, b in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = b.divmod(others, order)[1] if others else b
        # leading term is untouched by construction; only tails are reduced
        out.append(r.monic(order))
    out.sort(key=lambda g: key(g.leading(order)[0]))
    return out


def groebner(ideal: Ideal, degree_cap: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis with the normal selection strategy.

    S-pairs whose lcm has total degree above ``degree_cap`` are skipped and
    the result is flagged ``complete=False``; so are new basis elements of
    too high degree.
    """
    order = ideal.order
    gens = [g for g in ideal.gens]
    if degree_cap is not None and gens and degree_cap < max(g.total_degree() for g in gens):
        raise ValueError("degree cap below the generator degrees")
    if not gens:
        return GroebnerBasis([], order, True, degree_cap)
    basis: list[Poly] = []
    for g in gens:
        r = g.divmod(basis, order)[1] if basis else g
        if not r.is_zero():
            basis.append(r.monic(order))
    if any(b.is_constant() for b in basis):
        return GroebnerBasis([Poly.const(ideal.ring, 1)], order, True, degree_cap)

    complete = True
    lt = [b.leading(order)[0] for b in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pairs:
        # normal strategy: smallest lcm (in total degree, then the order), deterministic
        i, j = min(pairs, key=lambda ij: (sum(_lcm(lt[ij[0]], lt[ij[1]])),
                                           order.key(_lcm(lt[ij[0]], lt[ij[1]])), ij))
        pairs.discard((i, j))
        L = _lcm(lt[i], lt[j])
        if degree_cap is not None and sum(L) > degree_cap:
            complete = False
            continue
        # first criterion: coprime leading monomials
        if all(x == 0 or y == 0 for x, y in zip(lt[i], lt[j])):
            continue
        # chain criterion
        if any(k != i and k != j and _divides(lt[k], L)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue
        s = _spoly(basis[i], basis[j], order)
        r = s.divmod(basis, order)[1]
        if r.is_zero():
            continue
        if degree_cap is not None and r.total_degree() > degree_cap:
            complete = False
            continue
        r = r.monic(order)
        if r.is_constant():
            return GroebnerBasis([Poly.const(ideal.ring, 1)], order, True, degree_cap)
        k = len(basis)
        basis.append(r)
        lt.append(r.leading(order)[0])
        pairs.update((a, k) for a in range(k))
    return GroebnerBasis(_interreduce(basis, order), order, complete, degree_cap)


def ideal_member(p: Poly, ideal: Ideal | GroebnerBasis, degree_cap: int | None = None) -> Membership:
    gb = ideal if isinstance(ideal, GroebnerBasis) else groebner(ideal, degree_cap)
    if gb.normal_form(p).is_zero():
        return Membership.YES
    return Membership.NO if gb.complete else Membership.UNKNOWN


@dataclass
class Elimination:
    ideal: Ideal
    complete: bool
    dropped: tuple[int, ...]


def eliminate(ideal: Ideal, drop_vars: Sequence, degree_cap: int | None = None) -> Elimination:
    """Generators of ``ideal ∩ C[remaining variables]`` via a block elimination order."""
    ring = ideal.ring
    drop = tuple(sorted(ring.index(v) for v in drop_vars))
    order = elimination_order(drop)
    gb = groebner(Ideal(ideal.gens, order, ring=ring), degree_cap)
    keep = [g for g in gb.basis if not (g.support() & set(drop))]
    return Elimination(Ideal(keep, GRLEX, ring=ring), gb.complete, drop)
