"""Numerical kernels used throughout the package.

Dense operators are plain ``numpy.ndarray`` objects of dtype complex128.
The matrix exponential and the Hermitian eigensolver delegate to scipy and
numpy (LAPACK); the wrappers here only enforce the symmetry preconditions
and translate failures into this package's exceptions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
import scipy.integrate
import scipy.linalg

from . import kernels
from .errors import NoConvergence, NonFiniteState, NotAntiHermitian, NotHermitian

SYMMETRY_TOL = 1e-10


def laguerre(n: int, m: float, x):
    """Associated Laguerre polynomial ``L_n^m(x)``.

    Uses the three-term recurrence in ``n``; the explicit series cancels
    badly once ``x`` exceeds ``n``. Accepts scalar or array ``x``.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    values = kernels.laguerre_recurrence(int(n), float(m), np.asarray(x, dtype=float))
    if np.ndim(x) == 0:
        return float(values)
    return values


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_hermitian(h, tol: float = SYMMETRY_TOL) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and max_abs(h - h.conj().T) <= tol


def is_anti_hermitian(a, tol: float = SYMMETRY_TOL) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and max_abs(a + a.conj().T) <= tol


def unitary_exp(a, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Return ``exp(A)`` for anti-Hermitian ``A``.

    Padé scaling and squaring (``scipy.linalg.expm``). Raises
    ``NotAntiHermitian`` when ``max|A + A^H|`` exceeds ``tol``.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotAntiHermitian(f"expected a square matrix, got shape {a.shape}")
    if not is_anti_hermitian(a, tol):
        raise NotAntiHermitian(f"max|A + A^H| = {max_abs(a + a.conj().T):.3e}")
    return scipy.linalg.expm(a)


def hermitian_eigen(h, tol: float = SYMMETRY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns ascending eigenvalues and the matrix whose columns are the
    orthonormal eigenvectors.
    """
    h = np.asarray(h, dtype=np.complex128)
    if not is_hermitian(h, tol):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    try:
        values, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return values, vectors


@dataclass(frozen=True)
class QuadratureSpec:
    lower: float
    upper: float
    subdivisions: int = 1000

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("quadrature requires lower < upper")
        if self.subdivisions < 2 or self.subdivisions % 2:
            raise ValueError("subdivisions must be an even integer >= 2")

    @property
    def step(self) -> float:
        return (self.upper - self.lower) / self.subdivisions

    def nodes(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.subdivisions + 1)


def simpson(samples, spec: QuadratureSpec) -> float:
    """Composite Simpson sum of values already sampled on ``spec.nodes()``."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (spec.subdivisions + 1,):
        raise ValueError(
            f"expected {spec.subdivisions + 1} samples, got shape {samples.shape}"
        )
    return float(scipy.integrate.simpson(samples, dx=spec.step))


def integrate(f: Callable[[float], float], spec: QuadratureSpec) -> float:
    """Composite Simpson estimate of the integral of ``f`` over ``spec``."""
    samples = np.fromiter((f(t) for t in spec.nodes()), dtype=float)
    return simpson(samples, spec)


@dataclass(frozen=True)
class OdeSpec:
    t0: float
    t1: float
    steps: int

    def __post_init__(self):
        if not self.t0 < self.t1:
            raise ValueError("ode integration requires t0 < t1")
        if self.steps < 1:
            raise ValueError("steps must be positive")

    @property
    def step(self) -> float:
        return (self.t1 - self.t0) / self.steps

    def times(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(self.steps + 1)


class Trajectory(NamedTuple):
    t: np.ndarray
    y: np.ndarray  # shape (steps + 1, dim)


def ode_solve(f: Callable[[float, np.ndarray], np.ndarray], y0, spec: OdeSpec) -> Trajectory:
    """Fixed-step classical Runge-Kutta integration of ``y' = f(t, y)``."""
    y = np.array(y0, dtype=float).reshape(-1)
    ts = spec.times()
    h = spec.step
    ys = np.empty((spec.steps + 1, y.size))
    ys[0] = y
    for i in range(spec.steps):
        t = ts[i]
        k1 = np.asarray(f(t, y), dtype=float)
        k2 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k1), dtype=float)
        k3 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k2), dtype=float)
        k4 = np.asarray(f(t + h, y + h * k3), dtype=float)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise NonFiniteState(f"non-finite state at t = {ts[i + 1]!r}")
        ys[i + 1] = y
    return Trajectory(ts, ys)
