"""Numerical flows of polynomial vector fields and orbit dimensions from concatenated flows.

Everything here is floating point (numpy, complex128).  A concatenated flow
map ``(t_1..t_k) ↦ φ_{α_k}(t_k) ∘ … ∘ φ_{α_1}(t_1)(p)`` is differentiated by
central differences in the times; the rank of that Jacobian, maximized over
words and times, estimates the dimension of the orbit through p.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
from typing import Sequence

import numpy as np

from .crfields import VectorField


class FlowDivergence(RuntimeError):
    pass


@dataclass(frozen=True)
class FlowConfig:
    h: float = 1e-3
    delta: float = 0.1
    k_max: int | None = None      # default 3 * ambient dimension
    svd_tol: float = 1e-6
    fd_step: float = 1e-5
    blowup: float = 1e6

    def __post_init__(self):
        if self.h <= 0 or self.delta <= 0 or self.svd_tol <= 0:
            raise ValueError("h, delta and svd_tol must be positive")

    @property
    def steps(self) -> int:
        return max(1, math.ceil(self.delta / self.h))


class CompiledField:
    """Vectorized evaluation of a polynomial vector field on batches of points."""

    def __init__(self, X: VectorField):
        self.dim = X.ring.nvars
        exps = sorted({e for c in X.coeffs for e in c.terms})
        self.exps = np.array(exps, dtype=np.int64).reshape(len(exps), self.dim)
        C = np.zeros((len(exps), self.dim), dtype=complex)
        index = {e: i for i, e in enumerate(exps)}
        for k, c in enumerate(X.coeffs):
            for e, v in c.terms.items():
                C[index[e], k] = complex(v)
        self.C = C
        self.maxdeg = int(self.exps.max()) if len(exps) else 0

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """``x`` has shape (B, dim); returns (B, dim)."""
        if not len(self.exps):
            return np.zeros_like(x)
        # powers[j][b, i] = x[b, i] ** j
        powers = [np.ones_like(x)]
        for _ in range(self.maxdeg):
            powers.append(powers[-1] * x)
        P = np.stack(powers)                                # (maxdeg+1, B, dim)
        gathered = P[self.exps.T, :, np.arange(self.dim)[:, None]]   # (dim, K, B)
        mono = np.prod(gathered, axis=0).T                  # (B, K)
        return mono @ self.C


def _rk4(F: CompiledField, x: np.ndarray, t: np.ndarray, cfg: FlowConfig) -> np.ndarray:
    """Integrate dx/ds = t * F(x) for s in [0, 1]; ``t`` has shape (B,)."""
    n = cfg.steps
    ds = 1.0 / n
    tt = t[:, None]
    for _ in range(n):
        k1 = tt * F(x)
        k2 = tt * F(x + 0.5 * ds * k1)
        k3 = tt * F(x + 0.5 * ds * k2)
        k4 = tt * F(x + ds * k3)
        x = x + (ds / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > cfg.blowup:
            raise FlowDivergence("trajectory left the ball of radius %g" % cfg.blowup)
    return x


def flow(X: VectorField | CompiledField, p: Sequence[complex], t: complex,
         cfg: FlowConfig = FlowConfig()) -> np.ndarray:
    """``exp(t X)(p)`` by RK4 along the straight segment from 0 to t."""
    if abs(t) > cfg.delta * (1 + 1e-12):
        raise ValueError("|t| exceeds delta")
    F = X if isinstance(X, CompiledField) else CompiledField(X)
    x = np.asarray(p, dtype=complex).reshape(1, -1)
    return _rk4(F, x, np.array([t], dtype=complex), cfg)[0]


def concatenated_flow(fields: Sequence[CompiledField], word: Sequence[int], p, times: np.ndarray,
                      cfg: FlowConfig) -> np.ndarray:
    """Γ for a batch of time vectors: ``times`` has shape (B, k); returns (B, dim)."""
    B = times.shape[0]
    x = np.tile(np.asarray(p, dtype=complex), (B, 1))
    for j, a in enumerate(word):
        x = _rk4(fields[a], x, times[:, j], cfg)
    return x


def flow_jacobian(fields, word, p, times: np.ndarray, cfg: FlowConfig) -> np.ndarray:
    """Central-difference Jacobian of Γ at one time vector (dim × k)."""
    k = len(word)
    eps = cfg.fd_step
    batch = np.tile(times, (2 * k, 1)).astype(complex)
    for j in range(k):
        batch[2 * j, j] += eps
        batch[2 * j + 1, j] -= eps
    vals = concatenated_flow(fields, word, p, batch, cfg)
    return ((vals[0::2] - vals[1::2]) / (2 * eps)).T


def numeric_rank(J: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(J, compute_uv=False)
    if not len(s) or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def orbit_dim_numeric(fields: Sequence[VectorField], p, cfg: FlowConfig = FlowConfig(),
                      seed: int = 0, words_per_length: int = 2, patience: int | None = 4) -> dict:
    """Stabilized maximal rank of concatenated flow maps through p.

    Words of each length k ≤ k_max are the cyclic word through all fields
    plus random ones; times are random complex with ``δ/2 ≤ |t| ≤ δ``.
    The search stops at full ambient rank, at k_max, or once the rank has
    not grown for ``patience`` consecutive lengths (None: never early).
    On divergence the run is retried once with half the delta.
    """
    if not fields:
        raise ValueError("need at least one field")
    comp = [CompiledField(f) for f in fields]
    dim = comp[0].dim
    p = np.array([complex(x) for x in p])
    try:
        return _orbit(comp, dim, p, cfg, seed, words_per_length, patience)
    except FlowDivergence:
        smaller = FlowConfig(cfg.h, cfg.delta / 2, cfg.k_max, cfg.svd_tol, cfg.fd_step, cfg.blowup)
        return _orbit(comp, dim, p, smaller, seed, words_per_length, patience)


def _orbit(comp, dim, p, cfg, seed, words_per_length, patience):
    rng = np.random.default_rng(seed)
    k_max = cfg.k_max or 3 * dim
    nf = len(comp)
    best = 0
    by_length = []
    for k in range(1, k_max + 1):
        words = [[j % nf for j in range(k)]]
        for _ in range(words_per_length - 1):
            words.append(list(rng.integers(0, nf, size=k)))
        for word in words:
            r = np.sqrt(rng.uniform(0.25, 1.0, size=k)) * cfg.delta
            theta = rng.uniform(0, 2 * np.pi, size=k)
            times = (r * np.exp(1j * theta)).reshape(1, k)
            J = flow_jacobian(comp, word, p, times, cfg)
            best = max(best, numeric_rank(J, cfg.svd_tol))
        by_length.append(best)
        if best == dim:
            break
        if patience and len(by_length) > patience and by_length[-1 - patience] == best:
            break
    return {"dim": best, "by_length": by_length, "ambient": dim,
            "delta": cfg.delta, "svd_tol": cfg.svd_tol}
