"""Sparse multivariate polynomials over Q(i) with a conjugation-aware variable context.

A :class:`Ring` fixes an ordered list of variables.  Each variable is tagged
holomorphic or antiholomorphic and may carry the index of its conjugate
partner; the pairing is declared when the ring is built and is never guessed
from variable names.

Text syntax (whitespace-insensitive)::

    (3/2+1/2i)*z1^2*zb1 - 1/4*(z2+zb2)^2 + i*z3

Numbers are integers or ``p/q`` rationals with an optional ``i`` suffix, ``*``
is mandatory between factors and ``^`` takes a nonnegative integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence
import re

from .gaussrat import GaussRat, ONE, ZERO, format_gauss

HOLO = "holomorphic"
ANTI = "antiholomorphic"


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        self.text = text
        self.column = column
        self.message = message
        super().__init__("%s at column %d in %r" % (message, column, text))


class NoConjugatePartner(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    """Ordered variable context.

    ``partners[k]`` is the index of the conjugate partner of variable ``k`` or
    ``None``; ``kinds[k]`` is :data:`HOLO` or :data:`ANTI`.
    """

    names: tuple[str, ...]
    kinds: tuple[str, ...]
    partners: tuple[int | None, ...]

    def __post_init__(self):
        n = len(self.names)
        if len(self.kinds) != n or len(self.partners) != n:
            raise ValueError("ring data length mismatch")
        if len(set(self.names)) != n:
            raise ValueError("duplicate variable names")
        for k, j in enumerate(self.partners):
            if j is not None and self.partners[j] != k:
                raise ValueError("pairing must be symmetric")
        object.__setattr__(self, "_index", {s: k for k, s in enumerate(self.names)})

    @classmethod
    def complex(cls, n: int, holo: str = "z", anti: str = "zb") -> "Ring":
        """``z1..zn, zb1..zbn`` with ``zk`` paired to ``zbk``."""
        names = tuple("%s%d" % (holo, k + 1) for k in range(n)) + \
            tuple("%s%d" % (anti, k + 1) for k in range(n))
        kinds = (HOLO,) * n + (ANTI,) * n
        partners = tuple(range(n, 2 * n)) + tuple(range(n))
        return cls(names, kinds, partners)

    @classmethod
    def holomorphic(cls, names: Iterable[str]) -> "Ring":
        names = tuple(names)
        return cls(names, (HOLO,) * len(names), (None,) * len(names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.nvars:
                raise IndexError(name)
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r" % name) from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def extend(self, names: Iterable[str]) -> "Ring":
        """Append unpaired holomorphic variables."""
        names = tuple(names)
        return Ring(self.names + names, self.kinds + (HOLO,) * len(names),
                    self.partners + (None,) * len(names))

    def var(self, name) -> "Poly":
        return Poly.var(self, name)

    def const(self, c) -> "Poly":
        return Poly.const(self, c)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly.const(self, 1)


# ---------------------------------------------------------------- orders

class MonomialOrder:
    """A monomial order given by a sort key on exponent tuples (bigger key = bigger monomial)."""

    def __init__(self, name: str, key):
        self.name = name
        self.key = key

    def __repr__(self):
        return "MonomialOrder(%s)" % self.name

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _grlex_key(e):
    return (sum(e), e)


GRLEX = MonomialOrder("grlex", _grlex_key)


def elimination_order(block: Sequence[int]) -> MonomialOrder:
    """Block order: graded lex on ``block`` first, then graded lex on the rest.

    Any polynomial whose leading monomial is free of the block variables is
    free of them entirely, which is what elimination needs.
    """
    block = tuple(sorted(set(block)))
    bset = set(block)

    def key(e):
        eb = tuple(e[i] for i in block)
        er = tuple(x for i, x in enumerate(e) if i not in bset)
        return (sum(eb), eb, sum(er), er)

    return MonomialOrder("elim%s" % (block,), key)


# ---------------------------------------------------------------- Poly

def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial ``{exponent tuple: GaussRat}`` in a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object] | None = None, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n = ring.nvars
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError("bad exponent %r for %d variables" % (e, n))
                c = GaussRat.coerce(c)
                if not c.is_zero():
                    clean[e] = c
            self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, ring, terms):
        return cls(ring, terms, _trusted=True)

    @classmethod
    def const(cls, ring: Ring, c) -> "Poly":
        c = GaussRat.coerce(c)
        if c.is_zero():
            return cls._make(ring, {})
        return cls._make(ring, {(0,) * ring.nvars: c})

    @classmethod
    def var(cls, ring: Ring, name) -> "Poly":
        k = ring.index(name)
        e = [0] * ring.nvars
        e[k] = 1
        return cls._make(ring, {tuple(e): ONE})

    @classmethod
    def monomial(cls, ring: Ring, exp, c=1) -> "Poly":
        return cls(ring, {tuple(exp): c})

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> GaussRat:
        return self.terms.get((0,) * self.ring.nvars, ZERO)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        """Lowest total degree of a term (the valuation); -1 for zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var) -> int:
        k = self.ring.index(var)
        return max((e[k] for e in self.terms), default=-1)

    def degree_in_block(self, idx: Iterable[int]) -> int:
        idx = tuple(idx)
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that actually occur."""
        s = set()
        for e in self.terms:
            s.update(i for i, x in enumerate(e) if x)
        return s

    def involves(self, var) -> bool:
        return self.ring.index(var) in self.support()

    def coeff(self, exp) -> GaussRat:
        return self.terms.get(tuple(exp), ZERO)

    # -- equality
    def _check(self, other: "Poly"):
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, RatFn):
            return NotImplemented
        return Poly.const(self.ring, other)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            c = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == Poly.const(self.ring, c).terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- ring operations
    def __neg__(self):
        return Poly._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Poly._make(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, RatFn):
                return NotImplemented
            c = GaussRat.coerce(other)
            if c.is_zero():
                return Poly._make(self.ring, {})
            return Poly._make(self.ring, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = c1 * c2
                s = out.get(e)
                out[e] = v if s is None else s + v
        return Poly._make(self.ring, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def mul_truncated(self, other: "Poly", order: int) -> "Poly":
        """Product keeping only terms of total degree <= order."""
        self._check(other)
        out: dict = {}
        b = [(e, sum(e), c) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > order:
                continue
            for e2, d2, c2 in b:
                if d1 + d2 > order:
                    continue
                e = _add_exp(e1, e2)
                v = c1 * c2
                s = out.get(e)
                out[e] = v if s is None else s + v
        return Poly._make(self.ring, {e: c for e, c in out.items() if not c.is_zero()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer")
        result = Poly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, order: int) -> "Poly":
        return Poly._make(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= order})

    # -- calculus and substitution
    def diff(self, var) -> "Poly":
        k = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * e[k]
        return Poly._make(self.ring, out)

    def evaluate(self, point: Sequence) -> GaussRat:
        """Value at a point giving every variable (in ring order)."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has %d coordinates, ring has %d variables"
                             % (len(point), self.ring.nvars))
        pt = [GaussRat.coerce(x) for x in point]
        cache: dict = {}
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for k, x in enumerate(e):
                if x:
                    key = (k, x)
                    pw = cache.get(key)
                    if pw is None:
                        pw = pt[k] ** x
                        cache[key] = pw
                    v = v * pw
            total = total + v
        return total

    def partial_eval(self, values: Mapping) -> "Poly":
        """Substitute constants for some variables (result stays in the same ring)."""
        vals = {self.ring.index(k): GaussRat.coerce(v) for k, v in values.items()}
        out: dict = {}
        cache: dict = {}
        for e, c in self.terms.items():
            v = c
            e2 = list(e)
            for k, x in vals.items():
                if e[k]:
                    key = (k, e[k])
                    pw = cache.get(key)
                    if pw is None:
                        pw = x ** e[k]
                        cache[key] = pw
                    v = v * pw
                    e2[k] = 0
            if v.is_zero():
                continue
            e2 = tuple(e2)
            s = out.get(e2)
            out[e2] = v if s is None else s + v
        return Poly._make(self.ring, {e: c for e, c in out.items() if not c.is_zero()})

    def compose(self, target: Ring, images: Sequence["Poly"], order: int | None = None) -> "Poly":
        """Substitute ``images[k]`` (polynomials in ``target``) for variable ``k``.

        With ``order`` set, every intermediate product is truncated at that
        total degree, which is how truncated power series are composed.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        for im in images:
            if im.ring != target:
                raise ValueError("images must live in the target ring")
        powers: dict = {}

        def power(k, x):
            key = (k, x)
            p = powers.get(key)
            if p is None:
                if x == 1:
                    p = images[k]
                else:
                    half = power(k, x // 2)
                    p = half.mul_truncated(half, order) if order is not None else half * half
                    if x % 2:
                        p = p.mul_truncated(images[k], order) if order is not None else p * images[k]
                powers[key] = p
            return p

        acc: dict = {}
        one = Poly.const(target, 1)
        for e, c in self.terms.items():
            term = one * c
            for k, x in enumerate(e):
                if x:
                    pk = power(k, x)
                    term = term.mul_truncated(pk, order) if order is not None else term * pk
                    if term.is_zero():
                        break
            for e2, c2 in term.terms.items():
                s = acc.get(e2)
                acc[e2] = c2 if s is None else s + c2
        return Poly._make(target, {e: c for e, c in acc.items() if not c.is_zero()})

    def subs(self, mapping: Mapping, order: int | None = None) -> "Poly":
        """Substitute polynomials (same ring) for the named variables."""
        images = [Poly.var(self.ring, k) for k in range(self.ring.nvars)]
        for k, v in mapping.items():
            idx = self.ring.index(k)
            images[idx] = v if isinstance(v, Poly) else Poly.const(self.ring, v)
        return self.compose(self.ring, images, order=order)

    def embed(self, target: Ring, index_map: Sequence[int] | None = None) -> "Poly":
        """Move into ``target``; variable k goes to ``index_map[k]`` (default: by name)."""
        if index_map is None:
            index_map = [target.index(s) for s in self.ring.names]
        n = target.nvars
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for k, x in enumerate(e):
                if x:
                    e2[index_map[k]] += x
            e2 = tuple(e2)
            s = out.get(e2)
            out[e2] = c if s is None else s + c
        return Poly._make(target, {e: c for e, c in out.items() if not c.is_zero()})

    # -- conjugation
    def conjugate(self) -> "Poly":
        """Swap every variable with its partner and conjugate the coefficients."""
        partners = self.ring.partners
        used = self.support()
        for k in used:
            if partners[k] is None:
                raise NoConjugatePartner("no conjugate partner for %s" % self.ring.names[k])
        n = self.ring.nvars
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for k, x in enumerate(e):
                if x:
                    e2[partners[k]] = x
            out[tuple(e2)] = c.conj()
        return Poly._make(self.ring, out)

    def is_real(self) -> bool:
        return self.conjugate() == self

    # -- orders and division
    def leading(self, order: MonomialOrder = GRLEX):
        """``(exponent, coefficient)`` of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder = GRLEX) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self * (ONE / c)

    def split(self, block: Iterable[int]) -> dict:
        """Expand in monomials of the ``block`` variables.

        Returns ``{block exponent: coefficient polynomial free of block}``.
        """
        block = tuple(block)
        out: dict = {}
        for e, c in self.terms.items():
            be = tuple(e[i] for i in block)
            rest = list(e)
            for i in block:
                rest[i] = 0
            out.setdefault(be, {})[tuple(rest)] = c
        return {k: Poly._make(self.ring, v) for k, v in out.items()}

    def divmod(self, divisors: Sequence["Poly"], order: MonomialOrder = GRLEX):
        """Multivariate division: ``self = sum(q_i * g_i) + r`` with no term of r divisible by any LT(g_i)."""
        for g in divisors:
            self._check(g)
            if g.is_zero():
                raise ZeroDivisionError("division by the zero polynomial")
        lts = [g.leading(order) for g in divisors]
        quot = [dict() for _ in divisors]
        rem: dict = {}
        p = dict(self.terms)
        key = order.key
        while p:
            e = max(p, key=key)
            c = p[e]
            for i, (le, lc) in enumerate(lts):
                if all(x >= y for x, y in zip(e, le)):
                    shift = tuple(x - y for x, y in zip(e, le))
                    f = c / lc
                    quot[i][shift] = quot[i].get(shift, ZERO) + f
                    for ge, gc in divisors[i].terms.items():
                        ee = _add_exp(ge, shift)
                        v = p.get(ee, ZERO) - f * gc
                        if v.is_zero():
                            p.pop(ee, None)
                        else:
                            p[ee] = v
                    break
            else:
                rem[e] = c
                del p[e]
        qs = [Poly(self.ring, q) for q in quot]
        return qs, Poly._make(self.ring, rem)

    def divide_by(self, q: "Poly", order: MonomialOrder = GRLEX):
        """``(quotient, remainder)`` for a single divisor."""
        qs, r = self.divmod([q], order)
        return qs[0], r

    def exact_div(self, q: "Poly") -> "Poly":
        quo, r = self.divide_by(q)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return quo

    # -- numeric export
    def compile(self):
        """``(exponents, coefficients)`` numpy arrays for fast complex evaluation."""
        import numpy as np
        if not self.terms:
            return np.zeros((0, self.ring.nvars), dtype=np.int64), np.zeros(0, dtype=complex)
        exps = np.array(list(self.terms.keys()), dtype=np.int64)
        coeffs = np.array([complex(c) for c in self.terms.values()], dtype=complex)
        return exps, coeffs

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)


# ---------------------------------------------------------------- rational functions

class RatFn:
    """``num/den`` with ``den != 0``; equality is tested by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.ring, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        self.num = num
        self.den = den

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @staticmethod
    def lift(x, ring: Ring) -> "RatFn":
        if isinstance(x, RatFn):
            return x
        if isinstance(x, Poly):
            return RatFn(x)
        return RatFn(Poly.const(ring, x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        o = RatFn.lift(other, self.ring)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RatFn is not hashable (no canonical form)")

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __add__(self, other):
        o = RatFn.lift(other, self.ring)
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFn.lift(other, self.ring))

    def __rsub__(self, other):
        return RatFn.lift(other, self.ring) - self

    def __mul__(self, other):
        o = RatFn.lift(other, self.ring)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFn.lift(other, self.ring)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def diff(self, var) -> "RatFn":
        return RatFn(self.num.diff(var) * self.den - self.num * self.den.diff(var), self.den * self.den)

    def evaluate(self, point) -> GaussRat:
        d = self.den.evaluate(point)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def __repr__(self):
        return "RatFn((%s)/(%s))" % (self.num, self.den)


# ---------------------------------------------------------------- printing

def _monomial_str(ring: Ring, e) -> str:
    parts = []
    for k, x in enumerate(e):
        if x == 1:
            parts.append(ring.names[k])
        elif x:
            parts.append("%s^%d" % (ring.names[k], x))
    return "*".join(parts)


def _is_negative(c: GaussRat) -> bool:
    if c.im == 0:
        return c.re < 0
    if c.re == 0:
        return c.im < 0
    return False


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        neg = _is_negative(c)
        if neg:
            c = -c
        mono = _monomial_str(p.ring, e)
        if not mono:
            body = format_gauss(c)
        elif c == ONE:
            body = mono
        else:
            body = format_gauss(c) + "*" + mono
        pieces.append(("-" if neg else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += " %s %s" % (sign, body)
    return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError("unexpected character %r" % text[pos], text, pos + 1)
        col = m.start(m.lastgroup) + 1
        toks.append((m.lastgroup, m.group(m.lastgroup), col))
        pos = m.end()
    toks.append(("end", "", n + 1))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def _split_fraction(self):
        """Turn a lexed ``a/b`` at the cursor into ``a``, ``/``, ``b``."""
        kind, val, col = self.peek()
        if kind == "num" and "/" in val:
            a, b = val.split("/")
            self.toks[self.i:self.i + 1] = [("num", a, col), ("op", "/", col + len(a)),
                                            ("num", b, col + len(a) + 1)]

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, self.text, tok[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected %r" % self.peek()[1])
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            if op[1] == "*":
                acc = acc * self.factor()
                continue
            tok = self.peek()
            self._split_fraction()
            d = self.factor()
            if not d.is_constant() or d.is_zero():
                self.error("can only divide by a nonzero constant", tok)
            acc = acc * Poly.const(self.ring, ONE / d.constant_term())
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            # "z^2/4" is (z^2)/4: the denominator goes back to the term loop
            self._split_fraction()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.error("exponent must be a nonnegative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            imag = val.endswith("i")
            q = Fraction(val[:-1] if imag else val)
            c = GaussRat(0, q) if imag else GaussRat(q)
            return Poly.const(self.ring, c)
        if kind == "name":
            if val == "i":
                return Poly.const(self.ring, GaussRat(0, 1))
            if val not in self.ring:
                self.error("unknown variable %r" % val, tok)
            return Poly.var(self.ring, val)
        if kind == "op" and val == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        self.error("unexpected %r" % (val or "end of input"), tok)


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse the text syntax into a :class:`Poly` of ``ring``."""
    return _Parser(text, ring).parse()


def jacobian(polys: Sequence[Poly], variables: Sequence) -> list[list[Poly]]:
    return [[p.diff(v) for v in variables] for p in polys]
