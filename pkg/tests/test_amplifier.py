import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndpa import amplifier as amp
from ndpa.errors import DegenerateTilt, GridTooCoarse, NegativeM, UnstableRegime
from ndpa.fock import QuantumNumbers, SectorBasis
from ndpa.numerics import hermitian_eigen
from ndpa.su11 import displacement_matrix


def test_params_derived(p_ref):
    assert p_ref.Omega == 2.0 and p_ref.delta_omega == pytest.approx(0.4)
    assert p_ref.gap == pytest.approx(1.6)
    assert p_ref.is_stable
    assert not amp.AmplifierParams(1, 1, 1.0).is_stable
    with pytest.raises(UnstableRegime):
        amp.AmplifierParams(1, 1, 1.0).gap
    with pytest.raises(ValueError):
        amp.AmplifierParams(1, 1, -0.1)


def test_energy_examples(p_ref):
    assert amp.energy(p_ref, QuantumNumbers(0, 0)) == pytest.approx(-0.2)
    assert amp.energy(p_ref, QuantumNumbers(2, 0)) == pytest.approx(1.4)
    assert amp.energy_nm(p_ref, 1, 2) == pytest.approx(amp.energy(p_ref, QuantumNumbers(4, 2)))
    with pytest.raises(NegativeM):
        amp.energy(p_ref, QuantumNumbers(1, -1))


def test_energy_decoupled_limit():
    p = amp.AmplifierParams(1.3, 0.4)
    for q in (QuantumNumbers(4, 2), QuantumNumbers(5, 1)):
        assert amp.energy(p, q) == pytest.approx(1.3 * q.n_a + 0.4 * q.n_b)


def test_tilt_cancels_pair_terms(p_ref):
    for psi in (0.0, 0.8, -2.5):
        p = amp.AmplifierParams(1.2, 0.8, 0.6, psi)
        c0, cp, cm = amp.tilted_coefficients(p, amp.tilt_parameters(p))
        assert c0 == pytest.approx(1.6)
        assert abs(cp) < 1e-12 and abs(cm) < 1e-12


def test_tilt_unstable():
    with pytest.raises(UnstableRegime):
        amp.tilt_parameters(amp.AmplifierParams(1, 1, 1.2))


@settings(max_examples=15, deadline=None)
@given(st.floats(0.0, 0.5), st.floats(0, 2 * math.pi), st.integers(0, 3))
def test_sector_spectrum_lowest_levels(chi, psi, m):
    p = amp.AmplifierParams(1.1, 0.9, chi, psi)
    basis = SectorBasis(m, m + 120)
    w, _ = hermitian_eigen(amp.hamiltonian_matrix(p, basis))
    for n in range(4):
        assert w[n] == pytest.approx(amp.energy_nm(p, n, m), abs=1e-9)


def test_displaced_hamiltonian_is_diagonal(p_ref):
    basis = SectorBasis(1, 121)
    d = displacement_matrix(amp.tilt_parameters(p_ref), basis)
    h = d.conj().T @ amp.hamiltonian_matrix(p_ref, basis) @ d
    blk = h[:8, :8]
    assert np.max(np.abs(blk - np.diag(np.diag(blk)))) < 1e-10
    np.testing.assert_allclose(np.diag(blk).real, [amp.energy_nm(p_ref, n, 1) for n in range(8)], atol=1e-10)


def test_resolved_levels_shrink_with_coupling():
    basis = SectorBasis(0, 60)
    few = amp.resolved_levels(amp.AmplifierParams(1, 1, 0.9), basis)
    many = amp.resolved_levels(amp.AmplifierParams(1, 1, 0.3), basis)
    assert len(few) < len(many)
    assert amp.level_tail_weight(amp.AmplifierParams(1, 1, 0.3), basis, 0) < 1e-20


def test_eigenfunction_is_displaced_oscillator(p_ref):
    # D(xi) Psi' expanded in oscillator functions reproduces the closed form
    from ndpa.su11 import pncs_coefficients

    m, n = 1, 2
    r = np.linspace(0.05, 4, 30)
    phi = 0.7
    tp = amp.tilt_parameters(p_ref)
    coeffs = pncs_coefficients((m + 1) / 2, n, tp.zeta, 80)
    series = sum(c * amp.oscillator_wavefunction(QuantumNumbers.from_radial(j, m), r, phi) for j, c in enumerate(coeffs))
    np.testing.assert_allclose(amp.eigenfunction(p_ref, n, m, r, phi), series, atol=1e-12)


def test_eigenfunction_small_coupling_limit():
    r, phi = np.linspace(0, 5, 50), 1.3
    q = QuantumNumbers(5, 1)
    near = amp.eigenfunction(amp.AmplifierParams(1, 1, 1e-8), q.n_r, q.m, r, phi)
    np.testing.assert_allclose(near, amp.oscillator_wavefunction(q, r, phi), atol=1e-6)
    exact = amp.eigenfunction(amp.AmplifierParams(1, 1, 0.0), q.n_r, q.m, r, phi)
    np.testing.assert_array_equal(exact, amp.oscillator_wavefunction(q, r, phi))
    with pytest.raises(DegenerateTilt):
        amp.eigenfunction_params(amp.AmplifierParams(1, 1, 0.0))


def test_eigenfunction_normalised(p_ref):
    f = lambda r, phi: amp.eigenfunction(p_ref, 1, 2, r, phi)
    assert amp.polar_inner(f, f, amp.quadrature_radius(10)).real == pytest.approx(1, abs=1e-9)


def test_polar_operators_on_oscillator():
    q = QuantumNumbers(4, 2)
    grid = amp.PolarGrid(400, 128, 10.0)
    f = grid.sample(lambda r, phi: amp.oscillator_wavefunction(q, r, phi))
    scale = np.max(np.abs(f))
    for which, lam in (("K0", 2.5), ("J0", 1.0), ("K2", 0.75)):
        res = amp.polar_generator_apply(which, f, grid) - lam * f
        assert np.max(np.abs(res)) / scale < 1e-4, which


def test_polar_raising_operator():
    q = QuantumNumbers(2, 0)
    up = QuantumNumbers(4, 0)
    grid = amp.PolarGrid(400, 128, 10.0)
    f = grid.sample(lambda r, phi: amp.oscillator_wavefunction(q, r, phi))
    g = grid.sample(lambda r, phi: amp.oscillator_wavefunction(up, r, phi))
    coeff = math.sqrt(2 * 2)  # sqrt((n+1)(2k+n)) with k = 1/2, n = 1
    assert np.max(np.abs(amp.polar_generator_apply("K+", f, grid) - coeff * g)) < 1e-4


def test_polar_grid_guards():
    with pytest.raises(GridTooCoarse):
        amp.PolarGrid(100, 128)
    grid = amp.PolarGrid(200, 128, 2.0)
    f = grid.sample(lambda r, phi: amp.oscillator_wavefunction(QuantumNumbers(0, 0), r, phi))
    with pytest.raises(GridTooCoarse):
        amp.polar_generator_apply("K0", f, grid)


def test_strong_coupling_needs_larger_cutoff():
    # at chi = 0.9 a cutoff near 60 is too small; a wider one recovers the ladder
    p = amp.AmplifierParams(1.2, 0.8, 0.9)
    for m in range(5):
        basis = SectorBasis(m, 240 + m)
        w, _ = hermitian_eigen(amp.hamiltonian_matrix(p, basis))
        for n in amp.resolved_levels(p, basis)[:5]:
            assert w[n] == pytest.approx(amp.energy_nm(p, n, m), abs=1e-8)
        assert len(amp.resolved_levels(p, basis)) >= 5
