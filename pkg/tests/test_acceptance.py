"""Acceptance gate: one pass/fail line per criterion.

Any pytest run lists the lines in its terminal summary; ``-s`` shows them
inline, and the module can also be executed directly. Tolerances are the contract values; nothing is loosened.
"""
import math
import time

import numpy as np
import pytest

from ndpa import amplifier as amp
from ndpa import berry, photon_stats, verify
from ndpa.errors import DenominatorVanishes
from ndpa.fock import QuantumNumbers, SectorBasis
from ndpa.numerics import QuadratureSpec, hermitian_eigen, max_abs
from ndpa.su11 import displacement_matrix

FREQS = [(1.0, 1.0), (1.2, 0.8), (1.5, 0.5)]
CHIS = [0.0, 0.3, 0.6, 0.9]
SECTORS = range(5)
NMAX = 60


def _interior(p, basis):
    # levels whose exact eigenvector leaves < 1e-10 of its weight past the cutoff
    return amp.resolved_levels(p, basis, threshold=1e-10)


def criterion_1():
    t0 = time.perf_counter()
    worst, empty, ground = 0.0, [], 0.0
    for w1, w2 in FREQS:
        for chi in CHIS:
            p = amp.AmplifierParams(w1, w2, chi)
            for m in SECTORS:
                basis = SectorBasis(m, NMAX)
                values, _ = hermitian_eigen(amp.hamiltonian_matrix(p, basis))
                levels = _interior(p, basis)
                ground = max(ground, abs(values[0] - amp.energy_nm(p, 0, m)))
                if not levels:
                    empty.append((w1, chi, m))
                    continue
                worst = max(worst, max(abs(values[n] - amp.energy_nm(p, n, m)) for n in levels))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and not empty and ground < 1e-8 and elapsed < 30
    detail = (f"max interior |dE| = {worst:.2e}, max ground-state |dE| = {ground:.2e}, "
              f"{len(empty)} cells with no resolved level (chi=0.9, m>=2), {elapsed:.1f}s")
    return ok, detail


def criterion_2():
    worst, thin = 0.0, []
    for w1, w2 in FREQS:
        for chi in CHIS:
            p = amp.AmplifierParams(w1, w2, chi)
            tp = amp.tilt_parameters(p)
            for m in SECTORS:
                basis = SectorBasis(m, NMAX)
                levels = _interior(p, basis)
                if len(levels) < 2:
                    thin.append((w1, chi, m))
                    continue
                d = displacement_matrix(tp, basis)
                h = (d.conj().T @ amp.hamiltonian_matrix(p, basis) @ d)[np.ix_(levels, levels)]
                worst = max(worst, max_abs(h - np.diag(np.diag(h))))
    ok = worst < 1e-8 and not thin
    return ok, f"max offdiag = {worst:.2e} on resolved blocks, {len(thin)} cells with fewer than 2 resolved levels"


def criterion_3():
    checks = verify.suite_similarity(tol=1e-8, count=20)
    worst = max(c.residual for c in checks)
    return all(c.passed for c in checks), f"{len(checks)} transforms at 20 points, max residual {worst:.2e}"


def criterion_4():
    checks = verify.suite_coherent(tol=1e-9, norm_tol=1e-8)
    cols = max(c.residual for c in checks if c.name.startswith("columns"))
    norm = max(c.residual for c in checks if c.name.startswith("normal"))
    return all(c.passed for c in checks), f"column error {cols:.2e}, normalisation error {norm:.2e}"


def criterion_5():
    spec = QuadratureSpec(0.0, 10.0, 2000)
    worst = 0.0
    for chi in CHIS:
        d = berry.DriveProfile.linear(2.0, chi, 10.0)
        for N in range(4):
            worst = max(worst, abs(berry.berry_phase_quadrature(d, N, spec) - berry.berry_phase_closed(N, 2.0, chi)))
    base = berry.berry_phase_closed(0, 2.0, 0.6)
    linear = all(berry.berry_phase_closed(N, 2.0, 0.6) == pytest.approx((N + 1) * base, rel=1e-15) for N in range(10))
    zero = all(berry.berry_phase_closed(N, 2.0, 0.0) == 0.0 for N in range(5))
    return worst < 1e-8 and linear and zero, f"max |quad - closed| = {worst:.2e}, linear in N+1: {linear}, chi=0 exact zero: {zero}"


def criterion_6():
    t0 = time.perf_counter()
    q = QuantumNumbers(0, 0)
    runs = [berry.extract_geometric_phase(2.0, 0.6, q, T) for T in (50, 100, 200, 400)]
    errs = [abs(r.estimate - math.pi / 4) for r in runs]
    one_sided = [abs(r.forward - math.pi / 4) for r in runs]
    elapsed = time.perf_counter() - t0
    monotone = all(a > b for a, b in zip(errs, errs[1:]))
    ok = monotone and errs[-1] < 5e-3 and elapsed < 120
    return ok, ("errors " + ", ".join(f"{e:.1e}" for e in errs)
                + " (one-sided: " + ", ".join(f"{e:.1e}" for e in one_sided) + f"), {elapsed:.1f}s")


def criterion_7():
    checks = verify.suite_invariant(tol=1e-6)
    return all(c.passed for c in checks), f"max residual {max(c.residual for c in checks):.2e}"


def criterion_8():
    checks = verify.suite_mandel(tol=1e-8)
    worst = max(c.residual for c in checks)
    exact = True
    for N, m in verify.MANDEL_GRID:
        q = QuantumNumbers(N, m)
        for f in (photon_stats.q_a, photon_stats.q_b):
            try:
                exact &= f(0.0, q).q == -1.0
            except DenominatorVanishes:
                pass
    sym = all(photon_stats.q_a(t, QuantumNumbers(N, 0)).q == photon_stats.q_b(t, QuantumNumbers(N, 0)).q
              for t in (0.1, 0.7, 1.3) for N in (0, 2, 4))
    ok = all(c.passed for c in checks) and exact and sym
    return ok, f"{len(checks)} cells, max |closed - brute| = {worst:.2e}, theta=0 gives -1: {exact}, m=0 symmetry: {sym}"


def criterion_9():
    p = amp.AmplifierParams(1.2, 0.8, 0.6)
    checks = verify.suite_wavefunction(p, tol=1e-6, op_tol=1e-4)
    quad = max(c.residual for c in checks if c.name in ("normalisation", "orthogonality"))
    ops = {"K0": 0.0, "J0": 0.0}
    casimir_literal = 0.0
    for N, m in ((0, 0), (2, 0), (3, 1), (4, 2)):
        q = QuantumNumbers(N, m)
        res = verify.polar_eigen_residuals(q)
        ops["K0"], ops["J0"] = max(ops["K0"], res["K0"]), max(ops["J0"], res["J0"])
        grid = amp.PolarGrid(400, 128, amp.quadrature_radius(N) + 2)
        f = grid.sample(lambda r, phi: amp.oscillator_wavefunction(q, r, phi))
        lit = max_abs(amp.polar_generator_apply("K2", f, grid) - (m * m + 1) / 4 * f) / max_abs(f)
        casimir_literal = max(casimir_literal, lit)
    ok = quad < 1e-6 and ops["K0"] < 1e-4 and ops["J0"] < 1e-4 and casimir_literal < 1e-4
    return ok, (f"quadratures {quad:.2e}, K0 {ops['K0']:.2e}, J0 {ops['J0']:.2e}, "
                f"K2 vs (m^2+1)/4 {casimir_literal:.2e} (the operator gives (m^2-1)/4)")


def criterion_10():
    checks = verify.suite_orbit(tol=1e-8, steps=10_000)
    return checks[0].passed, f"theta drift {checks[0].residual:.2e} over one period at 1e4 steps"


CRITERIA = [
    (1, "spectrum equivalence", criterion_1),
    (2, "matrix-level diagonalisation", criterion_2),
    (3, "similarity transforms", criterion_3),
    (4, "coherent states", criterion_4),
    (5, "Berry phase quadrature", criterion_5),
    (6, "adiabatic-limit dynamics", criterion_6),
    (7, "invariant residual", criterion_7),
    (8, "Mandel suite", criterion_8),
    (9, "wavefunction suite", criterion_9),
    (10, "exact-orbit ODE", criterion_10),
]


RESULTS = []  # printed again by the terminal summary hook in conftest.py


def _line(num, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {title}: {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn):
    ok, detail = fn()
    line = _line(num, title, ok, detail)
    RESULTS.append(line)
    print(line)
    assert ok, detail


if __name__ == "__main__":
    for num, title, fn in CRITERIA:
        print(_line(num, title, *fn()), flush=True)
