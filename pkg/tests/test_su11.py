import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndpa.errors import DomainError
from ndpa.fock import SectorBasis, generator_matrices
from ndpa.su11 import (
    TiltParams,
    displacement_matrix,
    irrep_action,
    irrep_matrices,
    pcs_coefficients,
    pncs_coefficients,
    similarity_coefficients,
    similarity_coefficients_tilt,
)


def test_tilt_params_derived_quantities():
    tp = TiltParams(math.log(2), 0.0)
    assert tp.alpha == pytest.approx(0.75)
    assert tp.beta == pytest.approx(0.125)
    assert tp.zeta == pytest.approx(-1 / 3)
    assert tp.eta == pytest.approx(math.log(8 / 9))


def test_tilt_params_canonical_form():
    tp = TiltParams(-0.5, 0.2)
    assert tp.theta == 0.5 and tp.gamma == pytest.approx(0.2 + math.pi)
    assert tp.xi == pytest.approx(TiltParams(-0.5, 0.2).xi)
    back = TiltParams.from_xi(tp.xi)
    assert back.theta == pytest.approx(tp.theta) and back.gamma == pytest.approx(tp.gamma)


def test_irrep_actions():
    assert irrep_action(0.5, 0, "K-") == (0.0, None)
    c, n = irrep_action(1.0, 2, "K+")
    assert n == 3 and c == pytest.approx(math.sqrt(3 * 4))
    assert irrep_action(2.0, 1, "K2") == (2.0, 1)
    with pytest.raises(DomainError):
        irrep_action(0.0, 0, "K0")


def test_irrep_matrices_match_boson_sector():
    basis = SectorBasis(3, 23)
    g = generator_matrices(basis)
    k0, kp, km = irrep_matrices(basis.k, basis.dim)
    np.testing.assert_allclose(k0, g.K0)
    np.testing.assert_allclose(kp, g.Kp, atol=1e-13)
    np.testing.assert_allclose(km, g.Km, atol=1e-13)


def test_zero_tilt_is_identity():
    assert similarity_coefficients(TiltParams(0.0, 1.0), "K+") == (0, 1, 0)
    np.testing.assert_allclose(displacement_matrix(TiltParams(0.0), SectorBasis(0, 10)), np.eye(6))


def test_similarity_example_ln2():
    c = similarity_coefficients(TiltParams(math.log(2), 0.0), "K0")
    np.testing.assert_allclose(c, (1.25, -0.375, -0.375))
    np.testing.assert_allclose(similarity_coefficients_tilt(math.log(2), 0.0, "K0"), c)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 1.2), st.floats(0, 2 * math.pi), st.sampled_from(["K0", "K+", "K-"]))
def test_both_similarity_forms_agree(theta, gamma, which):
    a = similarity_coefficients(TiltParams(theta, gamma), which)
    b = similarity_coefficients_tilt(theta, gamma, which)
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_similarity_against_conjugation():
    basis = SectorBasis(0, 200)
    g = generator_matrices(basis)
    tp = TiltParams(0.9, 2.1)
    d = displacement_matrix(tp, basis)
    blk = np.ix_(range(10), range(10))
    for which, x in (("K0", g.K0), ("K+", g.Kp), ("K-", g.Km)):
        c0, cp, cm = similarity_coefficients(tp, which)
        np.testing.assert_allclose((d.conj().T @ x @ d)[blk], (c0 * g.K0 + cp * g.Kp + cm * g.Km)[blk], atol=1e-9)


def test_pcs_vacuum_and_normalisation():
    out = pcs_coefficients(0.5, 0, 5)
    np.testing.assert_array_equal(out, [1, 0, 0, 0, 0])
    c = pcs_coefficients(1.5, 0.5 * cmath.exp(0.3j), 400)
    assert np.vdot(c, c).real == pytest.approx(1, abs=1e-12)


def test_pcs_is_first_pncs():
    z = 0.4 - 0.2j
    np.testing.assert_allclose(pncs_coefficients(1.0, 0, z, 50), pcs_coefficients(1.0, z, 50), atol=1e-15)


@pytest.mark.parametrize("n", range(6))
def test_pncs_matches_displacement_columns(n):
    basis = SectorBasis(2, 260)
    tp = TiltParams(1.1, 0.7)
    d = displacement_matrix(tp, basis)
    np.testing.assert_allclose(pncs_coefficients(basis.k, n, tp.zeta, 40), d[:40, n], atol=1e-12)


def test_pncs_domain():
    with pytest.raises(DomainError):
        pncs_coefficients(0.5, 0, 1.0, 10)
    with pytest.raises(DomainError):
        pcs_coefficients(0.5, 1.2j, 10)
