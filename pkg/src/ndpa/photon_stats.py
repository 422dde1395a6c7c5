"""Mandel Q-parameters of the tilted Fock states ``D(xi)|N, m>``.

Closed forms come in two equivalent parameterisations, by the tilt angle
``theta`` and by the amplifier parameters through ``cosh(theta) = Omega/R``
and ``sinh(theta) = 2 chi/R`` with ``R = sqrt(Omega^2 - 4 chi^2)``. The
brute-force route builds the state in the full two-mode Fock space and
takes the moments of ``a+a`` or ``b+b`` directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.sparse.linalg import expm_multiply

from .amplifier import AmplifierParams, tilt_parameters
from .errors import DenominatorVanishes, NegativeM, TruncationUnsafe
from .fock import FullBasis, QuantumNumbers, boson_matrices, generator_matrices

NUMBER_STATE_TOL = 1e-12
POISSON_TOL = 1e-12
DENOMINATOR_TOL = 1e-12
BOUNDARY_TOL = 1e-10

SUPER = "super-Poissonian"
POISSONIAN = "Poissonian"
SUB = "sub-Poissonian"
NUMBER_STATE = "number-state"


def classify(q: float) -> str:
    """Photon-statistics class of a Mandel parameter."""
    if abs(q + 1) < NUMBER_STATE_TOL:
        return NUMBER_STATE
    if abs(q) < POISSON_TOL:
        return POISSONIAN
    return SUPER if q > 0 else SUB


@dataclass(frozen=True)
class MandelResult:
    q: float
    classification: str = ""

    def __post_init__(self):
        object.__setattr__(self, "q", float(self.q))
        if not self.classification:
            object.__setattr__(self, "classification", classify(self.q))


class ExpectationTable(NamedTuple):
    k0: float
    j0: float
    kpkm: float
    kmkp: float


def expectations(q: QuantumNumbers) -> ExpectationTable:
    """``<K0>, <J0>, <K+K->, <K-K+>`` in the Fock state ``|N, m>``."""
    N, m = q.N, q.m
    kpkm = (N * N - m * m) / 4
    return ExpectationTable((N + 1) / 2, m / 2, kpkm, kpkm + N + 1)


def _numerator(q: QuantumNumbers) -> int:
    return q.N * q.N - q.m * q.m + 2 * q.N + 2


def _require_nonnegative(q: QuantumNumbers):
    if q.m < 0:
        raise NegativeM("closed forms assume m >= 0; swap the modes for m < 0")


def _mandel(scale: float, num: float, den: float, mode: str) -> MandelResult:
    if abs(den) < DENOMINATOR_TOL:
        raise DenominatorVanishes(f"<n_{mode}> vanishes; Q_{mode} is undefined")
    return MandelResult(scale * num / den - 1)


def q_a(theta: float, q: QuantumNumbers) -> MandelResult:
    """Signal-mode ``Q_a`` of ``D(xi)|N, m>`` at tilt angle ``theta``."""
    _require_nonnegative(q)
    ch = math.cosh(theta)
    return _mandel(math.sinh(theta) ** 2 / 4, _numerator(q), ch * (q.N + 1) + q.m - 1, "a")


def q_b(theta: float, q: QuantumNumbers) -> MandelResult:
    """Idler-mode ``Q_b``; identical to ``Q_a`` when ``m = 0``."""
    _require_nonnegative(q)
    ch = math.cosh(theta)
    return _mandel(math.sinh(theta) ** 2 / 4, _numerator(q), ch * (q.N + 1) - q.m - 1, "b")


def q_a_params(p: AmplifierParams, q: QuantumNumbers) -> MandelResult:
    _require_nonnegative(q)
    R = p.gap
    return _mandel(p.chi ** 2 / R, _numerator(q), p.Omega * (q.N + 1) + (q.m - 1) * R, "a")


def q_b_params(p: AmplifierParams, q: QuantumNumbers) -> MandelResult:
    _require_nonnegative(q)
    R = p.gap
    return _mandel(p.chi ** 2 / R, _numerator(q), p.Omega * (q.N + 1) - (q.m + 1) * R, "b")


def tilted_state(p: AmplifierParams, q: QuantumNumbers, basis: FullBasis) -> np.ndarray:
    """``D(xi)|N, m>`` in the full two-mode basis, using the full ``K+``/``K-``."""
    xi = tilt_parameters(p).xi
    g = generator_matrices(basis, sparse=True)
    start = np.zeros(basis.dim, dtype=np.complex128)
    start[basis.index(q.n_a, q.n_b)] = 1.0
    if xi == 0:
        return start
    gen = xi * g.Kp - np.conj(xi) * g.Km
    return expm_multiply(gen, start)


def brute_force_q(which: str, p: AmplifierParams, q: QuantumNumbers, N_max: int) -> MandelResult:
    """Mandel parameter from explicit moments of ``n_a`` or ``n_b``.

    Raises ``TruncationUnsafe`` when more than 1e-10 of the state's weight
    sits in the two outermost shells of the truncated space.
    """
    if which not in ("a", "b"):
        raise ValueError(f"mode must be 'a' or 'b', got {which!r}")
    if q.N > N_max - 10:
        raise ValueError(f"N = {q.N} needs N_max >= {q.N + 10}")
    p.gap  # stability gate
    basis = FullBasis(N_max)
    psi = tilted_state(p, q, basis)
    edge = basis.principal >= N_max - 1
    boundary = float(np.sum(np.abs(psi[edge]) ** 2))
    if boundary > BOUNDARY_TOL:
        raise TruncationUnsafe(f"boundary weight {boundary:.2e} exceeds {BOUNDARY_TOL:.0e}; raise N_max")
    ops = boson_matrices(basis, sparse=True)
    lower, raise_ = (ops.a, ops.a_dag) if which == "a" else (ops.b, ops.b_dag)
    n_psi = raise_ @ (lower @ psi)
    mean = float(np.real(np.vdot(psi, n_psi)))
    second = float(np.real(np.vdot(n_psi, n_psi)))
    if abs(mean) < DENOMINATOR_TOL:
        raise DenominatorVanishes(f"<n_{which}> vanishes; Q_{which} is undefined")
    return MandelResult((second - mean * mean) / mean - 1)


def mean_j0(p: AmplifierParams, q: QuantumNumbers, N_max: int) -> float:
    """``<J0>`` of the brute-force tilted state (conserved photon difference)."""
    basis = FullBasis(N_max)
    psi = tilted_state(p, q, basis)
    return float(np.real(np.vdot(psi, basis.angular * psi))) / 2
