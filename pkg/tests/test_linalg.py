from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from crkit.gaussrat import GaussRat, ONE, ZERO
from crkit.linalg import (Echelon, EvaluationExhausted, Matrix, det, determinant, exact_generic_rank,
                          generic_rank, generic_rank_report, inverse, matmul, nonzero_minor, nullspace, rank, solve)
from crkit.poly import RatFn, Ring

from conftest import gauss, poly_from_terms

entries = st.builds(GaussRat, st.integers(-4, 4), st.integers(-2, 2))


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)


def to_sympy(rows):
    return sp.Matrix([[sp.Rational(x.re) + sp.I * sp.Rational(x.im) for x in r] for r in rows])


def test_constant_matrices_match_oracle(frozen):
    A = frozen["matrices"]["A"]
    rows = [[gauss(x) for x in r] for r in A["rows"]]
    assert rank(rows) == A["rank"]
    ker = nullspace(rows)
    assert len(ker) == A["nullity"]
    for v in ker:
        assert all(sum((a * b for a, b in zip(r, v)), ZERO).is_zero() for r in rows)
    B = frozen["matrices"]["B"]
    rows = [[gauss(x) for x in r] for r in B["rows"]]
    assert det(rows) == gauss(B["det"])
    assert inverse(rows) == [[gauss(x) for x in r] for r in B["inverse"]]


def test_polynomial_determinant_matches_oracle(frozen):
    P = frozen["matrices"]["P"]
    R = Ring.holomorphic(["z1", "z2"])
    M = Matrix([[R.parse(e) for e in r] for r in P["rows"]], R)
    assert determinant(M) == poly_from_terms(R, P["det"])
    assert exact_generic_rank(M) == P["rank"]
    assert generic_rank(M, seed=1) == P["rank"]


@given(square(3))
def test_rank_and_det_against_sympy(rows):
    S = to_sympy(rows)
    assert rank(rows) == S.rank()
    d = sp.expand(S.det())
    assert det(rows) == GaussRat(Fraction(str(sp.re(d))), Fraction(str(sp.im(d))))


@given(square(3), st.lists(entries, min_size=3, max_size=3))
def test_solve(rows, rhs):
    x = solve(rows, rhs)
    if x is None:
        # no unique solution: singular, or inconsistent
        assert rank(rows) < 3
    else:
        assert matmul(rows, [[v] for v in x]) == [[b] for b in rhs]


@given(square(3))
def test_echelon_nullspace_dimension(rows):
    e = Echelon(3)
    for r in rows:
        e.add(r)
    assert e.rank + len(e.nullspace()) == 3


def test_generic_rank_examples():
    R = Ring.holomorphic(["z1"])
    M = Matrix([[R.parse("z1"), R.parse("z1^2")], [R.one(), R.parse("z1")]], R)
    rep = generic_rank_report(M, seed=3)
    assert rep.rank == 1 and not rep.certified
    assert rep.error_bound < 1e-3
    N = Matrix([[R.zero(), R.one()], [R.parse("-i"), R.zero()]], R)
    assert generic_rank(N) == 2
    assert nonzero_minor(M, 2) is None
    assert nonzero_minor(M, 1) is not None


def test_sampler_exhaustion():
    R = Ring.holomorphic(["z1"])
    M = Matrix([[RatFn(R.one(), R.parse("z1"))]], R)
    with pytest.raises(EvaluationExhausted):
        generic_rank_report(M, seed=0, sampler=lambda rng, t: [ZERO])
