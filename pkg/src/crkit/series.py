"""Truncated power-series maps with exact coefficients.

A :class:`SeriesMap` holds ``n_out`` components, each a polynomial in
``z1..z_{n_in}`` truncated at total degree ``order``.  Components that are
genuine polynomials (nothing was cut off) are flagged ``exact``; that flag is
what lets downstream algebra give exact rather than truncation-level answers.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .gaussrat import GaussRat, ZERO
from .poly import Poly, Ring


def input_ring(n_in: int) -> Ring:
    return Ring.holomorphic(["z%d" % (k + 1) for k in range(n_in)])


class SeriesMap:
    def __init__(self, n_in: int, order: int, components: Sequence[Poly | str],
                 exact: Sequence[bool] | None = None, numeric: bool = False):
        self.n_in = n_in
        self.order = order
        self.ring = input_ring(n_in)
        comps = []
        for c in components:
            if isinstance(c, str):
                c = self.ring.parse(c)
            if c.ring != self.ring:
                c = c.embed(self.ring)
            comps.append(c)
        if exact is None:
            exact = [c.total_degree() <= order for c in comps]
        self.exact = [bool(e) for e in exact]
        # exact components keep all their terms; truncated ones are cut at the order
        self.components = [c if e else c.truncate(order) for c, e in zip(comps, self.exact)]
        self.numeric = numeric

    @property
    def n_out(self) -> int:
        return len(self.components)

    @property
    def all_exact(self) -> bool:
        return all(self.exact)

    def __getitem__(self, k) -> "SeriesMap":
        if isinstance(k, slice):
            idx = range(self.n_out)[k]
        elif isinstance(k, int):
            idx = [k]
        else:
            idx = list(k)
        return SeriesMap(self.n_in, self.order, [self.components[i] for i in idx],
                         [self.exact[i] for i in idx], self.numeric)

    def concat(self, other: "SeriesMap") -> "SeriesMap":
        if other.n_in != self.n_in:
            raise ValueError("input dimensions differ")
        return SeriesMap(self.n_in, min(self.order, other.order), self.components + other.components,
                         self.exact + other.exact, self.numeric or other.numeric)

    def with_order(self, order: int) -> "SeriesMap":
        return SeriesMap(self.n_in, order, self.components, self.exact, self.numeric)

    def valuation(self, k: int) -> int:
        return self.components[k].min_degree()

    def compose(self, inner: "SeriesMap") -> "SeriesMap":
        """``self ∘ inner``; truncated components of self need inner values of positive valuation."""
        if inner.n_out != self.n_in:
            raise ValueError("dimension mismatch in composition")
        N = min(self.order, inner.order)
        comps, exact = [], []
        for c, e in zip(self.components, self.exact):
            if e and inner.all_exact:
                comps.append(c.compose(inner.ring, inner.components))
                exact.append(True)
                continue
            used = c.support()
            for k in used:
                if inner.components[k].constant_term() != ZERO and not e:
                    raise ValueError("inner map must vanish at the origin where a truncated series is substituted")
            comps.append(c.compose(inner.ring, inner.components, order=N))
            exact.append(False)
        return SeriesMap(inner.n_in, N, comps, exact, self.numeric or inner.numeric)

    def evaluate(self, point) -> list[GaussRat]:
        """Exact value; only defined when every component is a polynomial."""
        if not self.all_exact:
            raise ValueError("cannot evaluate a truncated series exactly")
        return [c.evaluate(point) for c in self.components]

    def conjugate_coeffs(self) -> list[Poly]:
        """Components with conjugated coefficients (the series of f̄ in the conjugate variables)."""
        return [Poly(c.ring, {e: v.conj() for e, v in c.terms.items()}) for c in self.components]

    def to_json(self) -> dict:
        comps = []
        for c in self.components:
            comps.append([[list(e), [_q(v.re), _q(v.im)]] for e, v in sorted(c.terms.items())])
        return {"n_in": self.n_in, "n_out": self.n_out, "order": self.order, "components": comps,
                "exact": self.exact}

    @classmethod
    def identity(cls, n: int, order: int = 20) -> "SeriesMap":
        R = input_ring(n)
        return cls(n, order, [R.var(k) for k in range(n)], [True] * n)

    def __repr__(self):
        return "SeriesMap(n_in=%d, order=%d, %s)" % (self.n_in, self.order, [str(c) for c in self.components])


def _q(x: Fraction):
    return x.numerator if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


# -------------------------------------------------------------- builtin generators

def sin_series(ring: Ring, var: int, order: int) -> Poly:
    terms = {}
    for k in range(1, order + 1, 2):
        e = [0] * ring.nvars
        e[var] = k
        terms[tuple(e)] = GaussRat(Fraction((-1) ** (k // 2), factorial(k)))
    return Poly(ring, terms)


def exp_series(ring: Ring, var: int, order: int) -> Poly:
    terms = {}
    for k in range(order + 1):
        e = [0] * ring.nvars
        e[var] = k
        terms[tuple(e)] = GaussRat(Fraction(1, factorial(k)))
    return Poly(ring, terms)


def power_truncated(p: Poly, a: int, order: int) -> Poly:
    out = Poly.const(p.ring, 1)
    for _ in range(a):
        out = out.mul_truncated(p, order)
    return out


def generator(spec: str, n_in: int, order: int, var: int = 0) -> tuple[Poly, bool]:
    """Series for a builtin generator name.

    ``sin``, ``exp``, ``polynomial:<poly>``, optionally followed by ``^a``
    (power) and/or ``@k`` (k-fold self-composition in the variable ``var``).
    Returns ``(poly, exact)``.
    """
    R = input_ring(n_in)
    if spec.startswith("polynomial:"):
        return R.parse(spec[len("polynomial:"):]), True
    base, _, it = spec.partition("@")
    base, _, pw = base.partition("^")
    power = int(pw) if pw else 1
    iterate = int(it) if it else 1
    if base == "sin":
        s = sin_series(R, var, order)
    elif base == "exp":
        s = exp_series(R, var, order)
    else:
        raise ValueError("unknown generator %r" % spec)
    s = power_truncated(s, power, order)
    if iterate > 1:
        if s.constant_term() != ZERO:
            raise ValueError("iterating needs a series vanishing at 0")
        images = [R.var(k) for k in range(n_in)]
        cur = s
        for _ in range(iterate - 1):
            images[var] = cur
            cur = s.compose(R, images, order=order)
        s = cur
    return s, False


def iterated(spec: str, k: int, order: int) -> list[Poly]:
    """``[ϖ, ϖ∘ϖ, ..., ϖ∘k]`` for a one-variable generator."""
    return [generator("%s@%d" % (spec, j), 1, order)[0] for j in range(1, k + 1)]
