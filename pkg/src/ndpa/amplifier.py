"""Stationary non-degenerate parametric amplifier.

``H = w1 a+a + w2 b+b + chi e^{-i psi} ab + chi e^{i psi} a+b+``, written as
``Omega (K0 - 1/2) + dOmega J0 + chi e^{-i psi} K- + chi e^{i psi} K+`` with
``Omega = w1 + w2`` and ``dOmega = w1 - w2`` (hbar = 1). Conjugating by
``D(xi)`` with ``tanh(theta) = 2 chi / Omega`` removes the ``K+-`` terms.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln

from .errors import DegenerateTilt, GridTooCoarse, NegativeM, UnstableRegime
from .fock import QuantumNumbers, generator_matrices
from .numerics import laguerre
from .su11 import TiltParams, pncs_coefficients, similarity_coefficients


@dataclass(frozen=True)
class AmplifierParams:
    omega1: float
    omega2: float
    chi: float = 0.0
    psi: float = 0.0

    def __post_init__(self):
        if not (self.omega1 > 0 and self.omega2 > 0):
            raise ValueError("mode frequencies must be positive")
        if self.chi < 0:
            raise ValueError("chi is a coupling magnitude and must be non-negative")

    @property
    def Omega(self) -> float:
        return self.omega1 + self.omega2

    @property
    def delta_omega(self) -> float:
        return self.omega1 - self.omega2

    @property
    def coupling(self) -> complex:
        """``lambda = chi exp(-i psi)``, the coefficient of ``ab``."""
        return self.chi * cmath.exp(-1j * self.psi)

    @property
    def is_stable(self) -> bool:
        return 2 * self.chi < self.Omega

    @property
    def gap(self) -> float:
        """``sqrt(Omega^2 - 4 chi^2)``, the level spacing of ``K0`` after tilting."""
        return stable_gap(self.Omega, self.chi)


def stable_gap(Omega: float, chi: float) -> float:
    if not 2 * chi < Omega:
        raise UnstableRegime(f"2*chi = {2 * chi} must be below Omega = {Omega}")
    return math.sqrt(Omega * Omega - 4 * chi * chi)


def hamiltonian_matrix(p: AmplifierParams, basis, sparse: bool = False):
    """Hamiltonian on a sector or full truncated basis."""
    g = generator_matrices(basis, sparse=True)
    eye = sp.identity(g.K0.shape[0], dtype=np.complex128, format="csr")
    lam = p.coupling
    h = p.Omega * (g.K0 - 0.5 * eye) + p.delta_omega * g.J0 + lam * g.Km + np.conj(lam) * g.Kp
    h = h.tocsr()
    return h if sparse else h.toarray()


def tilt_parameters(p: AmplifierParams) -> TiltParams:
    """Tilt that diagonalises ``H``: ``theta = artanh(2 chi / Omega)``, ``gamma = -psi``."""
    if not p.is_stable:
        raise UnstableRegime(f"2*chi = {2 * p.chi} must be below Omega = {p.Omega}")
    return TiltParams(math.atanh(2 * p.chi / p.Omega), -p.psi)


def tilted_coefficients(p: AmplifierParams, tp: TiltParams) -> tuple[complex, complex, complex]:
    """``(c0, c+, c-)`` in ``D^H H D = c0 K0 + c+ K+ + c- K- + dOmega J0 - Omega/2``."""
    out = np.zeros(3, dtype=np.complex128)
    lam = p.coupling
    for weight, gen in ((p.Omega, "K0"), (lam, "K-"), (np.conj(lam), "K+")):
        out += weight * np.asarray(similarity_coefficients(tp, gen))
    return tuple(out)


def _require_nonnegative_m(m: int):
    if m < 0:
        raise NegativeM(f"closed form assumes m >= 0 (got m = {m}); swap the modes instead")


def energy(p: AmplifierParams, q: QuantumNumbers) -> float:
    """Closed-form eigenvalue of ``D(xi)|N, m>``."""
    _require_nonnegative_m(q.m)
    return p.gap * (q.N + 1) / 2 + p.delta_omega * q.m / 2 - p.Omega / 2


def energy_nm(p: AmplifierParams, n: int, m: int) -> float:
    """Eigenvalue in radial/angular labels ``(n, m)``."""
    _require_nonnegative_m(m)
    return p.gap * (n + m / 2 + 0.5) + 0.5 * m * p.delta_omega - p.Omega / 2


def level_tail_weight(p: AmplifierParams, basis, n: int) -> float:
    """Weight of the exact eigenvector ``D(xi)|k, n>`` beyond the last-but-one sector row.

    Computed from the coherent-state expansion alone, so it predicts the
    truncation error of level ``n`` before any diagonalisation. The
    eigenvalue error observed in practice is a few times this weight.
    """
    coeffs = pncs_coefficients(basis.k, n, tilt_parameters(p).zeta, basis.dim + 400)
    return float(np.sum(np.abs(coeffs[basis.dim - 1:]) ** 2))


def resolved_levels(p: AmplifierParams, basis, threshold: float = 1e-10) -> list[int]:
    """Radial labels ``n`` of a sector whose tail weight is below ``threshold``."""
    out = []
    for n in range(basis.dim - 1):
        if level_tail_weight(p, basis, n) >= threshold:
            break
        out.append(n)
    return out


class PolarPoint(NamedTuple):
    r: float
    phi: float


def _radial_norm(n: int, m: int) -> float:
    # unit norm under r dr dphi
    return math.sqrt(math.exp(gammaln(n + 1) - gammaln(n + m + 1)) / math.pi)


def oscillator_wavefunction(q: QuantumNumbers, r, phi):
    """Two-dimensional oscillator eigenfunction for ``|N, m>`` in polar coordinates."""
    _require_nonnegative_m(q.m)
    n, m = q.n_r, q.m
    r = np.asarray(r, dtype=float)
    x = r * r
    val = (
        _radial_norm(n, m)
        * (-1) ** n
        * np.exp(1j * m * np.asarray(phi))
        * r**m
        * laguerre(n, m, x)
        * np.exp(-0.5 * x)
    )
    return val[()] if np.ndim(val) == 0 else val


class EigenfunctionParams(NamedTuple):
    """Parameters of the closed-form eigenfunction.

    ``w = -zeta`` is the coherent-state parameter in the sign convention the
    position-space formula is written in, and
    ``sigma = (1 - |w|^2) / ((1 - w)(-conj w))``.
    """

    zeta: complex
    w: complex
    sigma: complex


def eigenfunction_params(p: AmplifierParams) -> EigenfunctionParams:
    zeta = tilt_parameters(p).zeta
    w = -zeta
    if w == 0:
        raise DegenerateTilt("sigma is undefined at zero coupling")
    sigma = (1 - abs(w) ** 2) / ((1 - w) * (-w.conjugate()))
    return EigenfunctionParams(zeta, w, sigma)


def eigenfunction(p: AmplifierParams, n: int, m: int, r, phi):
    """Eigenfunction ``D(xi) Psi'_{n,m}`` of the amplifier in polar coordinates.

    Products with ``sigma`` are expanded so the expression stays finite as
    ``chi -> 0``; at exactly ``chi = 0`` the bare oscillator function is used.
    """
    _require_nonnegative_m(m)
    if n < 0:
        raise ValueError("n must be non-negative")
    w = -tilt_parameters(p).zeta
    if w == 0:
        return oscillator_wavefunction(QuantumNumbers.from_radial(n, m), r, phi)
    wc = w.conjugate()
    one_minus = 1 - abs(w) ** 2
    # (-conj w)(1 + sigma) and sigma / (1 + sigma), without forming sigma
    ladder = -wc + one_minus / (1 - w)
    ratio = 1.0 / (1.0 + (1 - w) * (-wc) / one_minus)
    r = np.asarray(r, dtype=float)
    x = r * r
    arg = x * ratio / (1 - w)
    val = (
        _radial_norm(n, m)
        * (-1) ** n
        * np.exp(1j * m * np.asarray(phi))
        * ladder**n
        * one_minus ** (0.5 * m + 0.5)
        / (1 - w) ** (m + 1)
        * np.exp(-x * (1 + w) / (2 * (1 - w)))
        * r**m
        * _complex_laguerre(n, m, arg)
    )
    return val[()] if np.ndim(val) == 0 else val


def _complex_laguerre(n: int, m: int, z):
    # the compiled recurrence is real-only; complex arguments stay in numpy
    z = np.asarray(z, dtype=np.complex128)
    if not np.any(z.imag):
        return laguerre(n, m, z.real).astype(np.complex128)
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 1.0 + m - z
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + m - z) * cur - (j + m) * prev) / (j + 1)
    return cur


def polar_inner(f: Callable, g: Callable, rmax: float, n_r: int = 200, n_phi: int = 128) -> complex:
    """``<f|g>`` over the plane: Gauss-Legendre in ``r`` on ``[0, rmax]``, trapezoid in ``phi``."""
    x, wts = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * rmax * (x + 1)
    wr = 0.5 * rmax * wts
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    R, P = np.meshgrid(r, phi, indexing="ij")
    integrand = np.conj(f(R, P)) * g(R, P) * R
    return complex(np.sum(integrand * wr[:, None]) * (2 * np.pi / n_phi))


def quadrature_radius(N: int) -> float:
    return math.sqrt(2 * N) + 6.0


@dataclass(frozen=True)
class PolarGrid:
    """Cell-centred radial grid ``r_i = (i + 1/2) h`` times a periodic angular grid."""

    n_r: int = 400
    n_phi: int = 128
    rmax: float = 10.0

    def __post_init__(self):
        if self.n_r < 200 or self.n_phi < 128 or self.n_phi % 2:
            raise GridTooCoarse("need at least 200 radial and an even number >= 128 angular points")

    @property
    def h(self) -> float:
        return self.rmax / self.n_r

    @property
    def r(self) -> np.ndarray:
        return (np.arange(self.n_r) + 0.5) * self.h

    @property
    def phi(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_phi) / self.n_phi

    def sample(self, func: Callable) -> np.ndarray:
        R, P = np.meshgrid(self.r, self.phi, indexing="ij")
        return np.asarray(func(R, P), dtype=np.complex128)


def _radial_derivatives(f: np.ndarray, grid: PolarGrid):
    half = grid.n_phi // 2
    # f(-r, phi) = f(r, phi + pi) supplies the ghost rows below r = 0
    below = np.roll(f[:2][::-1], -half, axis=1)
    above = np.zeros((2, f.shape[1]), dtype=f.dtype)
    ext = np.concatenate([below, f, above])
    c = slice(2, -2)
    fm2, fm1, f0, fp1, fp2 = ext[:-4], ext[1:-3], ext[c], ext[3:-1], ext[4:]
    h = grid.h
    d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h)
    d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h)
    return d1, d2


def _angular_derivatives(f: np.ndarray, grid: PolarGrid):
    k = np.fft.fftfreq(grid.n_phi, d=1.0 / grid.n_phi)
    fk = np.fft.fft(f, axis=1)
    k1 = 1j * k
    k1[grid.n_phi // 2] = 0.0  # Nyquist mode has no odd derivative
    return np.fft.ifft(k1 * fk, axis=1), np.fft.ifft(-(k**2) * fk, axis=1)


def polar_generator_apply(which: str, f: np.ndarray, grid: PolarGrid) -> np.ndarray:
    """Apply ``K0``, ``K+``, ``K-``, ``K2`` or ``J0`` as a differential operator.

    ``f`` is sampled on ``grid`` (shape ``(n_r, n_phi)``) and must have
    decayed at the outer radius.
    """
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (grid.n_r, grid.n_phi):
        raise ValueError(f"samples have shape {f.shape}, grid is {(grid.n_r, grid.n_phi)}")
    scale = np.max(np.abs(f))
    if scale and np.max(np.abs(f[-2:])) > 1e-8 * scale:
        raise GridTooCoarse("wavefunction has not decayed at the outer radius")
    dphi, dphi2 = _angular_derivatives(f, grid)
    if which == "J0":
        return -0.5j * dphi
    if which == "K2":
        return -0.25 * (f + dphi2)
    r = grid.r[:, None]
    dr, dr2 = _radial_derivatives(f, grid)
    laplacian = dr2 + dr / r + dphi2 / r**2
    if which == "K0":
        return 0.25 * (r**2 * f - laplacian)
    if which == "K+":
        return 0.25 * (r**2 * f - 2 * r * dr - 2 * f + laplacian)
    if which == "K-":
        return 0.25 * (r**2 * f + 2 * r * dr + 2 * f + laplacian)
    raise ValueError(f"unknown generator {which!r}")
