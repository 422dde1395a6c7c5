"""Time-dependent amplifier: Lewis invariant, phases and the Berry phase.

The drive is ``H(t) = Omega(t)(K0 - 1/2) + a(t) K+ + conj(a(t)) K- + dOmega(t) J0``
with ``a = chi exp(i psi)``. The invariant ``I = D(xi) K0 D^H(xi)`` with
``xi = -(theta/2) exp(-i gamma)`` obeys ``i dI/dt + [I, H] = 0`` when

    theta' = -2 chi sin(psi + gamma)
    gamma' = Omega - 2 chi coth(theta) cos(psi + gamma)

On the adiabatic branch ``psi + gamma = 0`` and ``tanh(theta) = 2 chi/Omega``,
so the tilt phase turns opposite to the pump phase. ``winding`` always counts
turns of the tilt phase ``gamma``; one positive turn produces the geometric
phase ``pi (N + 1)(cosh(theta) - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .amplifier import stable_gap
from .errors import (
    GridMismatch,
    NegativeM,
    NonWindingDrive,
    NormDrift,
    SinhSingularity,
    UnstableRegime,
)
from .fock import QuantumNumbers, SectorBasis, generator_matrices
from .kernels import rk4_tridiag
from .numerics import OdeSpec, QuadratureSpec, Trajectory, max_abs, ode_solve, simpson
from .su11 import pncs_coefficients

TWO_PI = 2.0 * math.pi


class _Constant:
    def __init__(self, value: float):
        self.value = float(value)

    def __call__(self, t):
        if np.ndim(t) == 0:
            return self.value
        return np.full(np.shape(t), self.value)

    def __repr__(self):
        return f"{self.value!r}"


class _Linear:
    def __init__(self, offset: float, rate: float):
        self.offset, self.rate = float(offset), float(rate)

    def __call__(self, t):
        return self.offset + self.rate * np.asarray(t, dtype=float)[()]

    def __repr__(self):
        return f"{self.offset!r} + {self.rate!r} t"


@dataclass(frozen=True)
class DriveProfile:
    """Time-dependent amplifier parameters over one period ``[0, period]``.

    Every field except ``period`` is a callable of time that accepts floats
    or arrays. ``psi_dot`` is optional; when absent the pump-phase rate is
    taken by a fourth-order central difference.
    """

    Omega: Callable
    delta_omega: Callable
    chi: Callable
    psi: Callable
    period: float
    psi_dot: Optional[Callable] = None

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError("period must be positive")

    @classmethod
    def linear(cls, Omega: float, chi: float, period: float, delta_omega: float = 0.0,
               psi0: float = 0.0, winding: int = 1) -> "DriveProfile":
        """Constant ``Omega``, ``chi``, ``dOmega`` with a uniformly turning pump phase.

        ``psi(t) = psi0 - 2 pi winding t / period``, so the adiabatic tilt
        phase advances by ``2 pi winding``.
        """
        rate = -TWO_PI * winding / period
        return cls(_Constant(Omega), _Constant(delta_omega), _Constant(chi),
                   _Linear(psi0, rate), period, _Constant(rate))

    @classmethod
    def constant(cls, Omega: float, chi: float, psi: float, period: float,
                 delta_omega: float = 0.0) -> "DriveProfile":
        return cls.linear(Omega, chi, period, delta_omega, psi, winding=0)

    def coupling(self, t):
        """Coefficient ``a(t) = chi exp(i psi)`` of ``K+``."""
        return self.chi(t) * np.exp(1j * np.asarray(self.psi(t)))

    def pump_rate(self, t):
        if self.psi_dot is not None:
            return self.psi_dot(t)
        h = 1e-4 * self.period
        t = np.asarray(t, dtype=float)
        return (
            -self.psi(t + 2 * h) + 8 * self.psi(t + h) - 8 * self.psi(t - h) + self.psi(t - 2 * h)
        ) / (12 * h)

    def gap(self, t):
        """``sqrt(Omega^2 - 4 chi^2)`` at the sampled times."""
        om, ch = np.asarray(self.Omega(t), float), np.asarray(self.chi(t), float)
        if np.any(2 * ch >= om):
            raise UnstableRegime("drive leaves the stable region 2*chi < Omega")
        return np.sqrt(om * om - 4 * ch * ch)


class AuxiliaryState(NamedTuple):
    theta: float
    gamma: float


class PhaseResult(NamedTuple):
    alpha_n: float
    dynamical: float
    geometric: float


def auxiliary_rhs(t: float, s, d: DriveProfile) -> np.ndarray:
    """Right-hand side ``(theta', gamma')`` of the invariant conditions."""
    theta, gamma = float(s[0]), float(s[1])
    if abs(theta) < 1e-9:
        raise SinhSingularity(f"theta = {theta!r} is too close to 0 for coth")
    chi, psi = d.chi(t), d.psi(t)
    phase = psi + gamma
    return np.array([
        -2.0 * chi * math.sin(phase),
        d.Omega(t) - 2.0 * chi * math.cos(phase) / math.tanh(theta),
    ])


def adiabatic_state(d: DriveProfile, t: float) -> AuxiliaryState:
    """Fixed point of the auxiliary equations for the frozen drive at ``t``."""
    om, ch = d.Omega(t), d.chi(t)
    stable_gap(om, ch)
    return AuxiliaryState(math.atanh(2 * ch / om), -float(d.psi(t)))


def integrate_auxiliary(d: DriveProfile, s0, spec: OdeSpec) -> Trajectory:
    """Integrate ``(theta, gamma)`` from ``s0``; ``theta(0)`` must exceed 1e-6."""
    if abs(s0[0]) <= 1e-6:
        raise SinhSingularity("auxiliary trajectories must start with theta > 1e-6")
    return ode_solve(lambda t, y: auxiliary_rhs(t, y, d), [s0[0], s0[1]], spec)


def exact_orbit_theta(Omega: float, chi: float, pump_rate: float) -> float:
    """``theta`` of the closed orbit ``psi + gamma = 0`` for ``psi' = pump_rate``."""
    return math.atanh(2 * chi / (Omega + pump_rate))


def _hamiltonian_from(d: DriveProfile, t: float, g) -> np.ndarray:
    a = complex(d.coupling(t))
    eye = np.eye(g.K0.shape[0])
    return d.Omega(t) * (g.K0 - 0.5 * eye) + d.delta_omega(t) * g.J0 + a * g.Kp + np.conj(a) * g.Km


def _invariant_from(s, g) -> np.ndarray:
    theta, gamma = float(s[0]), float(s[1])
    half = 0.5 * math.sinh(theta)
    e = np.exp(-1j * gamma)
    return math.cosh(theta) * g.K0 + half * e * g.Kp + half * np.conj(e) * g.Km


def sector_hamiltonian(d: DriveProfile, t: float, basis: SectorBasis) -> np.ndarray:
    return _hamiltonian_from(d, t, generator_matrices(basis))


def invariant_matrix(s, basis: SectorBasis) -> np.ndarray:
    """``I = cosh(theta) K0 + sinh(theta)/2 (e^{-i gamma} K+ + e^{i gamma} K-)``."""
    return _invariant_from(s, generator_matrices(basis))


def invariant_residual(d: DriveProfile, traj: Trajectory, basis: SectorBasis, margin: int = 2) -> float:
    """Largest ``max|i dI/dt + [I, H]|`` on the interior block along ``traj``.

    ``dI/dt`` is a fourth-order central difference of the sampled
    trajectory, so the check is independent of the auxiliary equations.
    """
    t, y = traj
    h = t[1] - t[0]
    inner = basis.interior(margin)
    blk = np.ix_(inner, inner)
    g = generator_matrices(basis)
    mats = [_invariant_from(s, g) for s in y]
    worst = 0.0
    for i in range(2, len(t) - 2):
        didt = (-mats[i + 2] + 8 * mats[i + 1] - 8 * mats[i - 1] + mats[i - 2]) / (12 * h)
        ham = _hamiltonian_from(d, t[i], g)
        res = 1j * didt + mats[i] @ ham - ham @ mats[i]
        worst = max(worst, max_abs(res[blk]))
    return worst


def time_derivative_transform(theta: float, gamma: float, theta_dot: float, gamma_dot: float):
    """Coefficients ``(c0, c+, c-)`` of ``D^H (i d/dt) D`` in ``K0, K+, K-``."""
    ch, sh = math.cosh(theta), math.sinh(theta)
    e = np.exp(-1j * gamma)
    return (
        complex(gamma_dot * (ch - 1)),
        -0.5 * e * (gamma_dot * sh + 1j * theta_dot),
        -0.5 * np.conj(e) * (gamma_dot * sh - 1j * theta_dot),
    )


def _check_grid(traj: Trajectory, spec: QuadratureSpec):
    nodes = spec.nodes()
    if traj.t.shape != nodes.shape or not np.allclose(traj.t, nodes, rtol=0, atol=1e-12 * max(1.0, abs(spec.upper))):
        raise GridMismatch("trajectory is not sampled on the quadrature nodes")


def _check_m(q: QuantumNumbers):
    if q.m < 0:
        raise NegativeM("phase formulas assume m >= 0")


def _trajectory_rates(d: DriveProfile, traj: Trajectory):
    t, y = traj
    theta, gamma = y[:, 0], y[:, 1]
    gamma_dot = np.array([auxiliary_rhs(ti, yi, d)[1] for ti, yi in zip(t, y)])
    return t, theta, gamma, gamma_dot


def nonadiabatic_phase(d: DriveProfile, traj: Trajectory, q: QuantumNumbers, spec: QuadratureSpec) -> float:
    """Lewis phase ``alpha_n`` accumulated along a non-adiabatic trajectory."""
    _check_m(q)
    _check_grid(traj, spec)
    t, theta, gamma, gamma_dot = _trajectory_rates(d, traj)
    om, dw, ch, psi = d.Omega(t), d.delta_omega(t), d.chi(t), d.psi(t)
    bracket = (gamma_dot - om) * (np.cosh(theta) - 1) + 2 * ch * np.cos(gamma + psi) * np.sinh(theta) - om
    integrand = 0.5 * (q.N + 1) * bracket - dw * q.m / 2 + om / 2
    return simpson(integrand, spec)


def lewis_phases(d: DriveProfile, traj: Trajectory, q: QuantumNumbers, spec: QuadratureSpec) -> PhaseResult:
    """Split of the Lewis phase into its dynamical and geometric parts.

    ``dynamical`` integrates ``<D^H H D>`` and ``geometric`` integrates
    ``<D^H i d/dt D>``; ``alpha_n = geometric - dynamical``.
    """
    _check_m(q)
    _check_grid(traj, spec)
    t, theta, gamma, gamma_dot = _trajectory_rates(d, traj)
    om, dw, ch, psi = d.Omega(t), d.delta_omega(t), d.chi(t), d.psi(t)
    k0 = 0.5 * (q.N + 1)
    energy_rate = k0 * (om * np.cosh(theta) - 2 * ch * np.sinh(theta) * np.cos(psi + gamma)) - om / 2 + dw * q.m / 2
    geometric_rate = k0 * gamma_dot * (np.cosh(theta) - 1)
    dyn, geo = simpson(energy_rate, spec), simpson(geometric_rate, spec)
    return PhaseResult(geo - dyn, dyn, geo)


def adiabatic_phase(d: DriveProfile, q: QuantumNumbers, spec: QuadratureSpec) -> float:
    """Phase ``-int E(t) dt`` of an adiabatically followed eigenstate."""
    _check_m(q)
    t = spec.nodes()
    om, dw = np.asarray(d.Omega(t), float), np.asarray(d.delta_omega(t), float)
    integrand = 0.5 * (q.N + 1) * d.gap(t) + dw * q.m / 2 - om / 2
    return -simpson(integrand, spec)


def berry_phase_closed(N: int, Omega: float, chi: float) -> float:
    """Geometric phase for one positive turn of the tilt phase at constant ``Omega``, ``chi``."""
    root = stable_gap(Omega, chi)
    return math.pi * (N + 1) * (Omega - root) / root


def tilt_winding(d: DriveProfile, spec: QuadratureSpec) -> float:
    """Net turns of the adiabatic tilt phase over the quadrature interval."""
    return -(float(d.psi(spec.upper)) - float(d.psi(spec.lower))) / TWO_PI


def berry_phase_quadrature(d: DriveProfile, N: int, spec: QuadratureSpec) -> float:
    """``(N + 1)/2 * closed-loop integral of (cosh(theta) - 1) d gamma`` on the adiabatic branch."""
    turns = tilt_winding(d, spec)
    if round(turns) == 0 or abs(turns - round(turns)) > 1e-6 / TWO_PI:
        raise NonWindingDrive(f"tilt phase turns {turns:.9f} times; need a nonzero whole number")
    t = spec.nodes()
    cosh_theta = np.asarray(d.Omega(t), float) / d.gap(t)
    gamma_rate = -np.asarray(d.pump_rate(t), float)
    return 0.5 * (N + 1) * simpson((cosh_theta - 1) * gamma_rate, spec)


class EvolutionResult(NamedTuple):
    final: np.ndarray
    overlap_phase: float
    times: np.ndarray
    phases: np.ndarray  # unwrapped arg <ref(t)|psi(t)> at the recorded times
    overlaps: np.ndarray  # |<ref(t)|psi(t)>|
    norm_error: float


def _reference_zetas(d: DriveProfile, times: np.ndarray, spec: OdeSpec, reference: str, s0) -> np.ndarray:
    if reference == "adiabatic":
        om, ch = np.asarray(d.Omega(times), float), np.asarray(d.chi(times), float)
        d.gap(times)
        theta = np.arctanh(2 * ch / om)
        gamma = -np.asarray(d.psi(times), float)
    elif reference == "lewis":
        traj = integrate_auxiliary(d, s0, spec)
        idx = np.rint((times - spec.t0) / spec.step).astype(int)
        theta, gamma = traj.y[idx, 0], traj.y[idx, 1]
    else:
        raise ValueError(f"unknown reference {reference!r}")
    return -np.tanh(theta / 2) * np.exp(-1j * gamma)


def schrodinger_evolve(
    d: DriveProfile,
    basis: SectorBasis,
    initial,
    spec: OdeSpec,
    *,
    n: int = 0,
    reference: str = "lewis",
    s0=None,
    record_every: int = 10,
) -> EvolutionResult:
    """Integrate ``i dpsi/dt = H(t) psi`` in a fixed-``m`` sector.

    The phase of the overlap with the reference state ``D(xi(t))|k, n>`` is
    tracked continuously over the recorded steps. ``reference='lewis'`` uses
    the auxiliary trajectory started at ``s0`` (default: the adiabatic point
    at ``t0``); ``reference='adiabatic'`` uses the instantaneous eigenstate.
    """
    psi0 = np.asarray(initial, dtype=np.complex128)
    if psi0.shape != (basis.dim,):
        raise ValueError(f"initial state has shape {psi0.shape}, sector dimension is {basis.dim}")
    if abs(np.linalg.norm(psi0) - 1) > 1e-8:
        raise ValueError("initial state must be normalised")
    g = generator_matrices(basis)
    k0 = np.real(np.diag(g.K0)).copy()
    kp = np.real(np.diag(g.Kp, -1)).copy()
    half_t = spec.t0 + 0.5 * spec.step * np.arange(2 * spec.steps + 1)
    omega = np.asarray(d.Omega(half_t), float) * np.ones_like(half_t)
    shift = -0.5 * omega + 0.5 * basis.m * np.asarray(d.delta_omega(half_t), float)
    coupling = np.asarray(d.coupling(half_t), np.complex128) * np.ones_like(half_t)
    rec, states = rk4_tridiag(psi0, k0, kp, omega, shift, coupling, spec.step, record_every)
    times = spec.t0 + spec.step * rec
    if s0 is None:
        s0 = adiabatic_state(d, spec.t0)
    zetas = _reference_zetas(d, times, spec, reference, s0)
    refs = np.array([pncs_coefficients(basis.k, n, z, basis.dim) for z in zetas])
    ov = np.einsum("ij,ij->i", refs.conj(), states)
    phases = np.unwrap(np.angle(ov))
    final = states[-1]
    norm_error = abs(np.linalg.norm(final) - 1)
    if norm_error > 1e-6:
        raise NormDrift(f"norm drifted by {norm_error:.2e}; reduce the step")
    return EvolutionResult(final, float(phases[-1]), times, phases, np.abs(ov), norm_error)


class GeometricExtraction(NamedTuple):
    forward: float  # one positive tilt turn
    backward: float  # one negative tilt turn
    estimate: float  # (forward - backward) / 2
    closed: float


def extract_geometric_phase(
    Omega: float,
    chi: float,
    q: QuantumNumbers,
    period: float,
    dt: float = 0.02,
    delta_omega: float = 0.0,
    nmax: Optional[int] = None,
) -> GeometricExtraction:
    """Geometric phase of a slowly rotated eigenstate from Schrodinger evolution.

    For each orientation the state starts in the instantaneous eigenstate,
    the total phase is tracked against the instantaneous eigenstate, and the
    adiabatic dynamical phase ``-int E dt`` is removed. The residual
    non-adiabatic shift is even in the rotation rate while the geometric
    phase is odd, so the half-difference of the two orientations cancels the
    leading ``1/period`` error.
    """
    _check_m(q)
    if nmax is None:
        nmax = q.N + 40
    basis = SectorBasis(q.m, nmax)
    steps = max(2, int(round(period / dt)))
    steps += steps % 2
    out = []
    for winding in (1, -1):
        d = DriveProfile.linear(Omega, chi, period, delta_omega, winding=winding)
        s = adiabatic_state(d, 0.0)
        z0 = -math.tanh(s.theta / 2) * np.exp(-1j * s.gamma)
        psi0 = pncs_coefficients(basis.k, q.n_r, z0, basis.dim)
        psi0 /= np.linalg.norm(psi0)
        res = schrodinger_evolve(
            d, basis, psi0, OdeSpec(0.0, period, steps), n=q.n_r, reference="adiabatic"
        )
        total = res.overlap_phase - res.phases[0]
        dyn = adiabatic_phase(d, q, QuadratureSpec(0.0, period, steps))
        out.append(total - dyn)
    fwd, bwd = out
    return GeometricExtraction(fwd, bwd, 0.5 * (fwd - bwd), berry_phase_closed(q.N, Omega, chi))
