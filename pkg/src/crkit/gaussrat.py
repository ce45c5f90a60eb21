"""Exact Gaussian rationals, stored as ``(a + b*i) / c`` with integer a, b, c."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
import numbers


def _norm(a: int, b: int, c: int) -> tuple[int, int, int]:
    if c < 0:
        a, b, c = -a, -b, -c
    g = gcd(gcd(a, b), c)
    if g > 1:
        a //= g
        b //= g
        c //= g
    return a, b, c


class GaussRat:
    """An element of Q(i).

    Instances are immutable and hashable.  Mixed arithmetic with ``int`` and
    ``Fraction`` is supported; ``complex`` and ``float`` are rejected so that
    rounding never sneaks in.
    """

    __slots__ = ("_a", "_b", "_c")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        c = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (c // re.denominator)
        b = im.numerator * (c // im.denominator)
        self._a, self._b, self._c = _norm(a, b, c)

    @classmethod
    def _raw(cls, a: int, b: int, c: int) -> "GaussRat":
        obj = object.__new__(cls)
        obj._a, obj._b, obj._c = _norm(a, b, c)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, bool):
            return cls._raw(int(x), 0, 1)
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, x.denominator)
        if isinstance(x, (float, complex)):
            raise TypeError("GaussRat refuses inexact value %r" % (x,))
        if isinstance(x, numbers.Rational):
            return cls._raw(int(x.numerator), 0, int(x.denominator))
        raise TypeError("cannot coerce %r to GaussRat" % (x,))

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._c)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._c)

    @property
    def parts(self) -> tuple[int, int, int]:
        """The normalized integer triple ``(a, b, c)``."""
        return self._a, self._b, self._c

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conj(self) -> "GaussRat":
        return GaussRat._raw(self._a, -self._b, self._c)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return Fraction(self._a * self._a + self._b * self._b, self._c * self._c)

    def __complex__(self) -> complex:
        return complex(self._a / self._c, self._b / self._c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self._a == other._a and self._b == other._b and self._c == other._c

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(Fraction(self._a, self._c))
        return hash((self._a, self._b, self._c))

    def __neg__(self) -> "GaussRat":
        return GaussRat._raw(-self._a, -self._b, self._c)

    def __add__(self, other) -> "GaussRat":
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        if self._c == o._c:
            return GaussRat._raw(self._a + o._a, self._b + o._b, self._c)
        return GaussRat._raw(self._a * o._c + o._a * self._c,
                             self._b * o._c + o._b * self._c,
                             self._c * o._c)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussRat":
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "GaussRat":
        return GaussRat.coerce(other) - self

    def __mul__(self, other) -> "GaussRat":
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        a1, b1, c1 = self._a, self._b, self._c
        a2, b2, c2 = o._a, o._b, o._c
        if b1 == 0 and b2 == 0:
            return GaussRat._raw(a1 * a2, 0, c1 * c2)
        return GaussRat._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, c1 * c2)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussRat":
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("GaussRat division by zero")
        a1, b1, c1 = self._a, self._b, self._c
        a2, b2, c2 = o._a, o._b, o._c
        n2 = a2 * a2 + b2 * b2
        # (a1+b1 i)/c1 * c2 (a2 - b2 i) / n2
        return GaussRat._raw((a1 * a2 + b1 * b2) * c2,
                             (b1 * a2 - a1 * b2) * c2,
                             c1 * n2)

    def __rtruediv__(self, other) -> "GaussRat":
        return GaussRat.coerce(other) / self

    def __pow__(self, k: int) -> "GaussRat":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussRat._raw(1, 0, 1) / self) ** (-k)
        result = GaussRat._raw(1, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return "GaussRat(%s)" % format_gauss(self)

    def __str__(self) -> str:
        return format_gauss(self)


ZERO = GaussRat._raw(0, 0, 1)
ONE = GaussRat._raw(1, 0, 1)
I = GaussRat._raw(0, 1, 1)


def _fmt_frac(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def format_gauss(x: GaussRat) -> str:
    """Render in the polynomial text syntax: ``3/2``, ``-1/2i``, ``(3/2+1/2i)``."""
    re, im = x.re, x.im
    if im == 0:
        return _fmt_frac(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = _fmt_frac(im) + "i"
    if re == 0:
        return ims
    sign = "" if ims.startswith("-") else "+"
    return "(%s%s%s)" % (_fmt_frac(re), sign, ims)
