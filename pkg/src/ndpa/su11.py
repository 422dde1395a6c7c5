"""Discrete-series SU(1,1) representations and displacement operators.

The displacement operator is ``D(xi) = exp(xi K+ - conj(xi) K-)`` with
``xi = -(theta/2) exp(-i gamma)``. Its normal form uses
``zeta = -tanh(theta/2) exp(-i gamma)`` and ``eta = ln(1 - |zeta|^2)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .fock import SectorBasis, generator_matrices
from .numerics import unitary_exp

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TiltParams:
    """Coherent-state (tilt) parameters ``theta`` and ``gamma``.

    Stored canonically with ``theta >= 0`` and ``gamma`` in ``[0, 2pi)``; a
    negative ``theta`` is folded into ``gamma + pi``, which leaves ``xi``
    unchanged.
    """

    theta: float
    gamma: float = 0.0

    def __post_init__(self):
        theta, gamma = float(self.theta), float(self.gamma)
        if theta < 0:
            theta, gamma = -theta, gamma + math.pi
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "gamma", gamma % TWO_PI)

    @classmethod
    def from_xi(cls, xi: complex) -> "TiltParams":
        if xi == 0:
            return cls(0.0, 0.0)
        return cls(2 * abs(xi), cmath.phase(-xi) * -1)

    @property
    def xi(self) -> complex:
        return -0.5 * self.theta * cmath.exp(-1j * self.gamma)

    @property
    def zeta(self) -> complex:
        return -math.tanh(0.5 * self.theta) * cmath.exp(-1j * self.gamma)

    @property
    def eta(self) -> float:
        return math.log1p(-abs(self.zeta) ** 2)

    @property
    def alpha(self) -> float:
        return math.sinh(self.theta)

    @property
    def beta(self) -> float:
        return 0.5 * (math.cosh(self.theta) - 1.0)


def _check_k(k: float) -> float:
    if not k > 0:
        raise DomainError(f"Bargmann index must be positive, got {k}")
    return float(k)


def irrep_action(k: float, n: int, which: str) -> tuple[float, Optional[int]]:
    """Action of ``K+``, ``K-``, ``K0`` or ``K2`` on ``|k, n>``.

    Returns ``(coefficient, n')``; ``K-`` on the lowest weight gives
    ``(0.0, None)``.
    """
    k = _check_k(k)
    if n < 0:
        raise ValueError("n must be non-negative")
    if which == "K+":
        return math.sqrt((n + 1) * (2 * k + n)), n + 1
    if which == "K-":
        if n == 0:
            return 0.0, None
        return math.sqrt(n * (2 * k + n - 1)), n - 1
    if which == "K0":
        return k + n, n
    if which == "K2":
        return k * (k - 1), n
    raise ValueError(f"unknown generator {which!r}")


def irrep_matrices(k: float, dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(K0, K+, K-)`` of the irrep ``k`` truncated to ``n < dim``."""
    k = _check_k(k)
    n = np.arange(dim)
    k0 = np.diag(k + n).astype(np.complex128)
    kp = np.diag(np.sqrt((n[:-1] + 1) * (2 * k + n[:-1])), -1).astype(np.complex128)
    return k0, kp, kp.conj().T.copy()


def displacement_matrix(tp: TiltParams, basis: SectorBasis) -> np.ndarray:
    """Matrix of ``D(xi)`` on a truncated sector."""
    if basis.dim < 2:
        raise ValueError("displacement needs a sector of dimension >= 2")
    g = generator_matrices(basis)
    xi = tp.xi
    return unitary_exp(xi * g.Kp - np.conj(xi) * g.Km)


def _check_zeta(zeta: complex) -> complex:
    zeta = complex(zeta)
    if abs(zeta) >= 1:
        raise DomainError(f"|zeta| must be < 1, got {abs(zeta)}")
    return zeta


def pcs_coefficients(k: float, zeta: complex, n_terms: int) -> np.ndarray:
    """Expansion of the Perelomov coherent state ``D(xi)|k, 0>`` in ``|k, n>``."""
    k = _check_k(k)
    zeta = _check_zeta(zeta)
    n = np.arange(n_terms)
    out = np.zeros(n_terms, dtype=np.complex128)
    if zeta == 0:
        out[0] = 1.0
        return out
    log_mag = (
        k * math.log1p(-abs(zeta) ** 2)
        + 0.5 * (gammaln(n + 2 * k) - gammaln(n + 1) - gammaln(2 * k))
        + n * math.log(abs(zeta))
    )
    return np.exp(log_mag + 1j * n * cmath.phase(zeta))


def pncs_coefficients(k: float, n: int, zeta: complex, n_terms: int) -> np.ndarray:
    """Expansion of the number coherent state ``D(xi)|k, n>`` in ``|k, p>``.

    Entry ``p`` collects every ``(s, j)`` pair of the double sum with
    ``n - j + s = p``, for ``p < n_terms``. All gamma-function ratios are
    formed from log-gamma differences.
    """
    k = _check_k(k)
    zeta = _check_zeta(zeta)
    if n < 0:
        raise ValueError("n must be non-negative")
    out = np.zeros(n_terms, dtype=np.complex128)
    if zeta == 0:
        if n < n_terms:
            out[n] = 1.0
        return out
    eta = math.log1p(-abs(zeta) ** 2)
    log_abs, phase = math.log(abs(zeta)), cmath.phase(zeta)
    p = np.arange(n_terms)
    for j in range(n + 1):
        s = p - n + j
        ok = s >= 0
        s, pj = s[ok], p[ok]
        log_mag = (
            eta * (k + n - j)
            + 0.5 * (gammaln(2 * k + n) + gammaln(2 * k + pj))
            - gammaln(2 * k + n - j)
            + 0.5 * (gammaln(n + 1) + gammaln(pj + 1))
            - gammaln(n - j + 1)
            - gammaln(s + 1)
            - gammaln(j + 1)
            + (s + j) * log_abs
        )
        # zeta^s (-conj zeta)^j
        out[ok] += (-1) ** j * np.exp(log_mag + 1j * (s - j) * phase)
    return out


_IDENTITY = {"K0": (1.0, 0.0, 0.0), "K+": (0.0, 1.0, 0.0), "K-": (0.0, 0.0, 1.0)}


def similarity_coefficients(tp: TiltParams, which: str) -> tuple[complex, complex, complex]:
    """Coefficients ``(c0, c+, c-)`` of ``D^H(xi) X D(xi) = c0 K0 + c+ K+ + c- K-``.

    Written in terms of ``xi``, ``alpha = sinh 2|xi|`` and
    ``beta = (cosh 2|xi| - 1)/2``. Zero tilt returns the identity transform.
    """
    if which not in _IDENTITY:
        raise ValueError(f"unknown generator {which!r}")
    if tp.theta == 0:
        return tuple(complex(c) for c in _IDENTITY[which])
    xi = tp.xi
    r = abs(xi)
    alpha, beta = math.sinh(2 * r), 0.5 * (math.cosh(2 * r) - 1)
    u = xi / r
    if which == "K+":
        return u.conjugate() * alpha, complex(beta + 1), beta * xi.conjugate() / xi
    if which == "K-":
        return u * alpha, beta * xi / xi.conjugate(), complex(beta + 1)
    return complex(2 * beta + 1), alpha * u / 2, alpha * u.conjugate() / 2


def similarity_coefficients_tilt(theta: float, gamma: float, which: str) -> tuple[complex, complex, complex]:
    """Same transform as :func:`similarity_coefficients`, in ``(theta, gamma)`` form."""
    ch, sh = math.cosh(theta), math.sinh(theta)
    e = cmath.exp(1j * gamma)
    if which == "K+":
        return -e * sh, complex((ch + 1) / 2), e * e * (ch - 1) / 2
    if which == "K-":
        return -sh / e, (ch - 1) / (2 * e * e), complex((ch + 1) / 2)
    if which == "K0":
        return complex(ch), -sh / (2 * e), -e * sh / 2
    raise ValueError(f"unknown generator {which!r}")
