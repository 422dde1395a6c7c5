"""Self-checks run by ``ndpa verify``.

Each suite compares a closed form against an independent numerical route
and returns one :class:`Check` per comparison with the measured residual.
"""
from __future__ import annotations

import math
from typing import Callable, Iterable, NamedTuple, Optional

import numpy as np

from . import amplifier as amp
from . import berry, photon_stats
from .errors import DenominatorVanishes
from .fock import QuantumNumbers, SectorBasis, generator_matrices
from .numerics import OdeSpec, QuadratureSpec, hermitian_eigen, max_abs
from .su11 import (
    TiltParams,
    displacement_matrix,
    pncs_coefficients,
    similarity_coefficients,
    similarity_coefficients_tilt,
)

SEED = 20240917


class Check(NamedTuple):
    suite: str
    name: str
    residual: float
    tol: float
    passed: bool
    note: str = ""


def _check(suite, name, residual, tol, note=""):
    residual = float(residual)
    return Check(suite, name, residual, tol, bool(residual < tol), note)


def suite_spectrum(p: amp.AmplifierParams, nmax: int = 60, tol: float = 1e-8,
                   sectors: Iterable[int] = range(5)) -> list[Check]:
    """Sector eigenvalues against the closed-form ladder on resolved levels."""
    out = []
    note = "levels with coherent-state tail weight < 1e-10; tol below the truncation error fails near the boundary"
    for m in sectors:
        basis = SectorBasis(m, nmax)
        values, _ = hermitian_eigen(amp.hamiltonian_matrix(p, basis))
        for n in amp.resolved_levels(p, basis):
            out.append(_check("spectrum", f"m={m} n={n}", abs(values[n] - amp.energy_nm(p, n, m)), tol, note))
    return out


def suite_diagonalisation(p: amp.AmplifierParams, nmax: int = 60, tol: float = 1e-8,
                          sectors: Iterable[int] = range(5)) -> list[Check]:
    """Off-diagonal part of ``D^H H D`` on the block of resolved levels."""
    out = []
    tp = amp.tilt_parameters(p)
    for m in sectors:
        basis = SectorBasis(m, nmax)
        levels = amp.resolved_levels(p, basis)
        d = displacement_matrix(tp, basis)
        h = d.conj().T @ amp.hamiltonian_matrix(p, basis) @ d
        blk = h[np.ix_(levels, levels)]
        off = blk - np.diag(np.diag(blk))
        out.append(_check("diagonalisation", f"m={m} levels<={levels[-1]}", max_abs(off), tol))
    return out


def random_tilts(count: int = 20, theta_max: float = 1.2, seed: int = SEED) -> list[TiltParams]:
    rng = np.random.default_rng(seed)
    return [TiltParams(t, g) for t, g in zip(rng.uniform(0.05, theta_max, count),
                                             rng.uniform(0, 2 * math.pi, count))]


def suite_similarity(tol: float = 1e-8, count: int = 20, m: int = 1, nmax: int = 240,
                     coefficients: Optional[Callable] = None) -> list[Check]:
    """Closed-form ``D^H X D`` coefficients against matrix conjugation.

    ``coefficients`` replaces the exponential-form formulas; tests use it
    to inject a deliberately wrong transform.
    """
    coefficients = coefficients or similarity_coefficients
    basis = SectorBasis(m, nmax)
    g = generator_matrices(basis)
    gens = {"K0": g.K0, "K+": g.Kp, "K-": g.Km}
    inner = np.arange(12)
    blk = np.ix_(inner, inner)
    worst = {("xi", w): 0.0 for w in gens} | {("tilt", w): 0.0 for w in gens}
    for tp in random_tilts(count):
        d = displacement_matrix(tp, basis)
        for which, mat in gens.items():
            exact = (d.conj().T @ mat @ d)[blk]
            for form, coeff in (("xi", coefficients(tp, which)),
                                ("tilt", similarity_coefficients_tilt(tp.theta, tp.gamma, which))):
                c0, cp, cm = coeff
                approx = (c0 * g.K0 + cp * g.Kp + cm * g.Km)[blk]
                worst[form, which] = max(worst[form, which], max_abs(exact - approx))
    return [_check("similarity", f"{which} ({form} form)", res, tol) for (form, which), res in worst.items()]


def suite_coherent(tol: float = 1e-9, norm_tol: float = 1e-8, nmax: int = 300) -> list[Check]:
    """Number coherent states against displacement-matrix columns."""
    rng = np.random.default_rng(SEED + 1)
    out = []
    for m in (0, 3):
        basis = SectorBasis(m, nmax)
        col_err = norm_err = 0.0
        for _ in range(6):
            zeta = 0.6 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
            tp = TiltParams(2 * math.atanh(abs(zeta)), -np.angle(-zeta))
            d = displacement_matrix(tp, basis)
            for n in range(6):
                c = pncs_coefficients(basis.k, n, tp.zeta, basis.dim)
                col_err = max(col_err, max_abs(d[:40, n] - c[:40]))
                norm_err = max(norm_err, abs(np.vdot(c, c).real - 1))
        out.append(_check("coherent", f"columns m={m}", col_err, tol))
        out.append(_check("coherent", f"normalisation m={m}", norm_err, norm_tol))
    return out


def suite_berry(tol: float = 1e-8, Omega: float = 2.0, chis=(0.0, 0.3, 0.6, 0.9), period: float = 10.0) -> list[Check]:
    out = []
    spec = QuadratureSpec(0.0, period, 2000)
    for chi in chis:
        d = berry.DriveProfile.linear(Omega, chi, period)
        for N in (0, 3):
            res = abs(berry.berry_phase_quadrature(d, N, spec) - berry.berry_phase_closed(N, Omega, chi))
            out.append(_check("berry", f"quadrature chi={chi} N={N}", res, tol))
    base = berry.berry_phase_closed(0, Omega, 0.6)
    lin = max(abs(berry.berry_phase_closed(N, Omega, 0.6) - (N + 1) * base) for N in range(8))
    out.append(_check("berry", "linear in N+1", lin, tol))
    out.append(_check("berry", "zero at chi=0", abs(berry.berry_phase_closed(5, Omega, 0.0)), 1e-300))
    return out


def suite_invariant(tol: float = 1e-6, Omega: float = 2.0, chi: float = 0.6) -> list[Check]:
    """Lewis invariance residual along trajectories started off the adiabatic point."""
    out = []
    basis = SectorBasis(1, 41)
    for s0, period in (((0.8, 0.3), 10.0), ((0.4, 2.0), 5.0)):
        d = berry.DriveProfile.linear(Omega, chi, period)
        traj = berry.integrate_auxiliary(d, s0, OdeSpec(0.0, 2.0, 400))
        out.append(_check("invariant", f"start={s0}", berry.invariant_residual(d, traj, basis), tol))
    return out


def suite_phases(tol: float = 1e-9, Omega: float = 2.0, chi: float = 0.6) -> list[Check]:
    """Lewis phase against its split into geometric and dynamical parts."""
    d = berry.DriveProfile.linear(Omega, chi, 10.0, delta_omega=0.3)
    spec = QuadratureSpec(0.0, 2.0, 400)
    traj = berry.integrate_auxiliary(d, (0.8, 0.3), OdeSpec(0.0, 2.0, 400))
    q = QuantumNumbers(3, 1)
    total = berry.nonadiabatic_phase(d, traj, q, spec)
    parts = berry.lewis_phases(d, traj, q, spec)
    fixed = berry.DriveProfile.constant(Omega, chi, 0.4, 3.0, delta_omega=0.3)
    s = berry.adiabatic_state(fixed, 0.0)
    fspec = QuadratureSpec(0.0, 3.0, 200)
    ftraj = berry.integrate_auxiliary(fixed, s, OdeSpec(0.0, 3.0, 200))
    return [
        _check("phases", "alpha = geometric - dynamical", abs(total - (parts.geometric - parts.dynamical)), tol),
        _check("phases", "fixed point equals adiabatic phase",
               abs(berry.nonadiabatic_phase(fixed, ftraj, q, fspec) - berry.adiabatic_phase(fixed, q, fspec)), tol),
    ]


def suite_orbit(tol: float = 1e-8, Omega: float = 2.0, chi: float = 0.6, period: float = 10.0,
                steps: int = 10_000) -> list[Check]:
    d = berry.DriveProfile.linear(Omega, chi, period)
    theta = berry.exact_orbit_theta(Omega, chi, d.psi_dot(0.0))
    traj = berry.integrate_auxiliary(d, (theta, -float(d.psi(0.0))), OdeSpec(0.0, period, steps))
    return [_check("orbit", "theta drift over one period", max_abs(traj.y[:, 0] - theta), tol)]


MANDEL_GRID = [(0, 0), (2, 0), (3, 1), (4, 2), (5, 5)]


def suite_mandel(tol: float = 1e-8, Omega: float = 2.0, chis=(0.0, 0.2, 0.4, 0.6, 0.8), nmax: int = 70) -> list[Check]:
    out = []
    for chi in chis:
        p = amp.AmplifierParams(Omega / 2, Omega / 2, chi)
        for N, m in MANDEL_GRID:
            q = QuantumNumbers(N, m)
            for mode, closed in (("a", photon_stats.q_a_params), ("b", photon_stats.q_b_params)):
                try:
                    ref = closed(p, q).q
                except DenominatorVanishes:
                    continue
                brute = photon_stats.brute_force_q(mode, p, q, nmax).q
                out.append(_check("mandel", f"Q_{mode} chi={chi} N={N} m={m}", abs(brute - ref), tol))
    return out


def polar_eigen_residuals(q: QuantumNumbers, grid: Optional[amp.PolarGrid] = None) -> dict:
    """Relative residuals ``|X f - lambda f|/|f|`` of the Fock wavefunction ``f``.

    The Casimir uses its exact eigenvalue ``k(k - 1) = (m^2 - 1)/4``.
    """
    grid = grid or amp.PolarGrid(400, 128, amp.quadrature_radius(q.N) + 2)
    f = grid.sample(lambda r, phi: amp.oscillator_wavefunction(q, r, phi))
    expect = {"K0": (q.N + 1) / 2, "J0": q.m / 2, "K2": (q.m * q.m - 1) / 4}
    scale = max_abs(f)
    return {w: max_abs(amp.polar_generator_apply(w, f, grid) - lam * f) / scale for w, lam in expect.items()}


def suite_wavefunction(p: amp.AmplifierParams, tol: float = 1e-6, op_tol: float = 1e-4) -> list[Check]:
    out = []
    states = [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2)]
    rmax = amp.quadrature_radius(12)
    funcs = {s: (lambda r, phi, s=s: amp.eigenfunction(p, s[0], s[1], r, phi)) for s in states}
    gram = np.array([[amp.polar_inner(funcs[a], funcs[b], rmax) for b in states] for a in states])
    out.append(_check("wavefunction", "normalisation", max_abs(np.diag(gram) - 1), tol))
    out.append(_check("wavefunction", "orthogonality", max_abs(gram - np.diag(np.diag(gram))), tol))
    for N, m in ((0, 0), (2, 0), (3, 1), (4, 2)):
        for which, res in polar_eigen_residuals(QuantumNumbers(N, m)).items():
            out.append(_check("wavefunction", f"{which} on |{N},{m}>", res, op_tol))
    return out


SUITES = {
    "spectrum": lambda p, tol: suite_spectrum(p, tol=tol or 1e-8),
    "diagonalisation": lambda p, tol: suite_diagonalisation(p, tol=tol or 1e-8),
    "similarity": lambda p, tol: suite_similarity(tol=tol or 1e-8),
    "coherent": lambda p, tol: suite_coherent(tol=tol or 1e-9),
    "berry": lambda p, tol: suite_berry(tol=tol or 1e-8),
    "invariant": lambda p, tol: suite_invariant(tol=tol or 1e-6),
    "phases": lambda p, tol: suite_phases(tol=tol or 1e-9),
    "orbit": lambda p, tol: suite_orbit(tol=tol or 1e-8),
    "mandel": lambda p, tol: suite_mandel(tol=tol or 1e-8),
    "wavefunction": lambda p, tol: suite_wavefunction(p, tol=tol or 1e-6),
}


def run_suites(p: amp.AmplifierParams, names: Optional[Iterable[str]] = None, tol: Optional[float] = None) -> list[Check]:
    names = list(names) if names else list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    checks = []
    for name in names:
        checks.extend(SUITES[name](p, tol))
    return checks
