from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crkit.gaussrat import GaussRat, I, ONE, ZERO, format_gauss

rats = st.fractions(min_value=-50, max_value=50, max_denominator=30)
gauss = st.builds(GaussRat, rats, rats)


def test_basic_arithmetic():
    a = GaussRat(Fraction(1, 2), 3)
    assert a + a.conj() == GaussRat(1)
    assert I * I == -ONE
    assert (ONE + I) ** 2 == 2 * I
    assert a.abs2() == Fraction(37, 4)
    assert GaussRat(3, 4) / GaussRat(3, 4) == ONE


def test_rejects_floats():
    with pytest.raises(TypeError):
        GaussRat.coerce(0.5)
    with pytest.raises(TypeError):
        GaussRat.coerce(1j)


def test_format():
    assert format_gauss(GaussRat(Fraction(3, 2))) == "3/2"
    assert format_gauss(I) == "i"
    assert format_gauss(-I) == "-i"
    assert format_gauss(GaussRat(0, Fraction(1, 2))) == "1/2i"
    assert format_gauss(GaussRat(Fraction(3, 2), Fraction(1, 2))) == "(3/2+1/2i)"


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conj() == a.conj() * b.conj()
    if not b.is_zero():
        assert (a / b) * b == a


@given(gauss)
def test_complex_roundtrip(a):
    assert abs(complex(a) - complex(float(a.re), float(a.im))) < 1e-12
    assert (a * a.conj()).is_real()
    assert hash(a) == hash(GaussRat(a.re, a.im))
    assert (a == ZERO) == a.is_zero()
