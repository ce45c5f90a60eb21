import math

import numpy as np
import pytest

from crkit.crfields import VectorField, cr_fields_both
from crkit.flows import CompiledField, FlowConfig, flow, flow_jacobian, numeric_rank, orbit_dim_numeric
from crkit.manifold import complexified
from crkit.poly import Ring

R = Ring.holomorphic(["x", "y", "z"])


def test_linear_flow_matches_exponential():
    X = VectorField.parse(R, {"x": "x", "y": "-2*y"})
    t = 0.08 + 0.05j
    out = flow(X, [1, 1, 0], t)
    assert np.allclose(out, [np.exp(t), np.exp(-2 * t), 0], atol=1e-10)


def test_compiled_field_evaluates_batches():
    X = VectorField.parse(R, {"x": "1", "z": "x^2*y + 3"})
    F = CompiledField(X)
    pts = np.array([[1, 2, 0], [2, -1, 5]], dtype=complex)
    assert np.allclose(F(pts), [[1, 0, 5], [1, 0, -1]])


def test_delta_is_enforced():
    X = VectorField.parse(R, {"x": "1"})
    with pytest.raises(ValueError):
        flow(X, [0, 0, 0], 0.5, FlowConfig(delta=0.1))
    with pytest.raises(ValueError):
        FlowConfig(h=0)


def test_numeric_rank():
    J = np.array([[1, 0], [0, 1e-9], [0, 0]])
    assert numeric_rank(J, 1e-6) == 1
    assert numeric_rank(np.zeros((2, 2)), 1e-6) == 0


def test_heisenberg_group_fields():
    X = VectorField.parse(R, {"x": "1"})
    Y = VectorField.parse(R, {"y": "1", "z": "x"})
    res = orbit_dim_numeric([X, Y], [0, 0, 0], seed=1)
    assert res["dim"] == 3


def test_commuting_fields_stay_low_dimensional():
    X = VectorField.parse(R, {"x": "1"})
    Y = VectorField.parse(R, {"y": "1"})
    res = orbit_dim_numeric([X, Y], [0, 0, 0], seed=1)
    assert res["dim"] == 2


def test_flow_jacobian_first_column_is_field():
    X = VectorField.parse(R, {"x": "1", "z": "y"})
    F = [CompiledField(X)]
    J = flow_jacobian(F, [0], np.array([0, 2, 0], dtype=complex), np.array([[0.05]]), FlowConfig())
    assert np.allclose(J[:, 0], [1, 0, 2], atol=1e-6)


def test_leviflat_orbit(examples):
    M = examples["leviflat"]
    res = orbit_dim_numeric(cr_fields_both(M), complexified(M.base_point), seed=0)
    assert res["dim"] == 2
