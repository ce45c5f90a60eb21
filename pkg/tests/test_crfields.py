import random

import pytest
from hypothesis import given, strategies as st

from crkit.crfields import (VectorField, constant_kernel, cr_fields_both, cr_vector_fields, is_tangent, kappa,
                            lie_bracket, lie_saturation, lie_saturation_fields, straighten_linear,
                            tangent_hol_fields)
from crkit.gaussrat import GaussRat
from crkit.ideal import Membership
from crkit.manifold import GraphManifold, complexified, random_linear_change, random_rigid_graph
from crkit.poly import Poly, Ring

R3 = Ring.complex(3)


def field(spec, ring=R3):
    return VectorField.parse(ring, spec)


def test_whitney_fields_are_tangent(examples, frozen):
    W = examples["whitney_tube"]
    wf = frozen["whitney_fields"]
    L1, L2 = field(wf["Lbar1"]), field(wf["Lbar2"])
    assert is_tangent(W, L1) is Membership.YES
    assert is_tangent(W, L2) is Membership.YES
    # a holomorphic direction is not tangent
    assert is_tangent(W, field({"z1": "1"})) is Membership.NO


def test_whitney_brackets_match_oracle(frozen):
    wf = frozen["whitney_fields"]
    L2b = field(wf["Lbar2"])
    assert lie_bracket(L2b.conjugate(), L2b) == field(wf["L2_Lbar2"])
    assert lie_bracket(field(wf["Lbar1"]), L2b) == field(wf["Lbar1_Lbar2"])


coef = st.builds(GaussRat, st.integers(-3, 3), st.integers(-3, 3))
R2 = Ring.complex(2)
polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 4), coef, max_size=3).map(lambda d: Poly(R2, d))
fields = st.lists(polys, min_size=4, max_size=4).map(lambda cs: VectorField(R2, cs))


@given(fields, fields, fields)
def test_jacobi_identity(X, Y, Z):
    total = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
    assert total.is_zero()


@given(fields, fields, polys)
def test_bracket_is_commutator(X, Y, f):
    assert lie_bracket(X, Y)(f) == X(Y(f)) - Y(X(f))


@pytest.mark.parametrize("name,verdict,rank", [
    ("heisenberg2", "minimal", 3), ("productC3", "minimal", 5), ("c3_remark", "minimal", 4),
    ("c4_prop1042", "minimal", 5), ("leviflat", "not_minimal", 2), ("whitney_tube", "minimal", 5)])
def test_lie_saturation_verdicts(examples, name, verdict, rank):
    rep = lie_saturation(examples[name])
    assert rep.verdict == verdict
    assert rep.span_rank_at_p == rank


def test_kernel_route_agrees_with_graph_route(examples):
    for name in ("heisenberg2", "c3_remark", "productC3"):
        M = examples[name]
        a = lie_saturation(M, route="graph")
        b = lie_saturation(M, route="kernel")
        assert (a.verdict, a.span_rank_at_p) == (b.verdict, b.span_rank_at_p)


def test_cr_fields_are_tangent(examples):
    for name in ("heisenberg2", "c4_prop1042"):
        M = examples[name]
        for X in cr_fields_both(M):
            assert is_tangent(M, X) is Membership.YES
        assert len(cr_vector_fields(M)) == M.m


def test_saturation_cap_gives_unknown():
    R = Ring.holomorphic(["x", "y", "z"])
    X = VectorField.parse(R, {"x": "1"})
    Y = VectorField.parse(R, {"y": "1", "z": "x^3"})
    rep = lie_saturation_fields([X, Y], [GaussRat(0)] * 3, 3, depth_cap=2)
    assert rep.verdict == "unknown"
    assert lie_saturation_fields([X, Y], [GaussRat(0)] * 3, 3, depth_cap=6).verdict == "minimal"


@pytest.mark.parametrize("name", ["heisenberg2", "productC3", "c3_remark", "c4_prop1042", "leviflat"])
def test_kappa_matches_oracle(examples, frozen, name):
    rep = kappa(examples[name])
    want = frozen["graphs"][name]
    assert (rep.kappa, rep.chi) == (want["kappa"], want["chi"])
    assert rep.kappa + rep.chi == rep.n


def test_kappa_of_series_graph_is_stable(examples):
    from crkit.manifold import graph_solve
    G = graph_solve(examples["whitney_tube"], [2, 2, 1], 4)
    rep = kappa(G)
    assert (rep.kappa, rep.chi) == (0, 3)
    assert rep.stable and not rep.certified


def test_straighten_product(examples):
    P = examples["productC3"]
    assert constant_kernel(P)
    red = straighten_linear(P)
    assert red.n == 2 and red.straightened == [["0", "1", "0"]]
    assert kappa(red).kappa == 0
    with pytest.raises(ValueError):
        straighten_linear(examples["heisenberg2"])


def test_holomorphic_fields(examples):
    assert tangent_hol_fields(examples["whitney_tube"], 3).basis == []
    P = tangent_hol_fields(examples["productC3"], 1)
    assert len(P.basis) == 4 and P.generic_rank == 1
    for X in P.basis:
        assert is_tangent(examples["productC3"], X) is Membership.YES
    assert tangent_hol_fields(examples["heisenberg2"], 2).basis == []


@given(st.integers(0, 10_000))
def test_kappa_bounds_on_random_graphs(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    M = random_rigid_graph(rng, n, rng.randint(1, n - 1), degree=3)
    rep = kappa(M)
    assert rep.kappa + rep.chi == n
    assert 0 <= rep.kappa <= M.m
    assert kappa(random_linear_change(M, rng)).kappa == rep.kappa
