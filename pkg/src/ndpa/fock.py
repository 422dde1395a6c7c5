"""Truncated two-mode Fock space.

States are labelled either by occupations ``(n_a, n_b)`` or by the
principal/angular pair ``(N, m)`` with ``N = n_a + n_b`` and
``m = n_a - n_b``. Operators are exact on every matrix element whose row
and column lie at least two shells below the cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import sqrt
from typing import NamedTuple, Optional

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    N: int
    m: int

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"N must be non-negative, got {self.N}")
        if abs(self.m) > self.N or (self.N - self.m) % 2:
            raise ValueError(f"invalid (N, m) = ({self.N}, {self.m}): need |m| <= N and N - m even")

    @classmethod
    def from_occupations(cls, n_a: int, n_b: int) -> "QuantumNumbers":
        return cls(n_a + n_b, n_a - n_b)

    @classmethod
    def from_radial(cls, n_r: int, m: int) -> "QuantumNumbers":
        return cls(2 * n_r + abs(m), m)

    @property
    def n_a(self) -> int:
        return (self.N + self.m) // 2

    @property
    def n_b(self) -> int:
        return (self.N - self.m) // 2

    @property
    def n_r(self) -> int:
        return (self.N - abs(self.m)) // 2

    @property
    def k(self) -> float:
        return bargmann_index(self.m)


def bargmann_index(m: int) -> float:
    """Bargmann index ``k = (|m| + 1)/2`` of the sector with angular label ``m``.

    The Casimir eigenvalue ``k(k - 1) = (m^2 - 1)/4`` is even in ``m``, so
    the positive discrete-series label uses ``|m|``.
    """
    return (abs(m) + 1) / 2


@dataclass(frozen=True)
class SectorBasis:
    """Fixed-``m`` subspace, ordered by ascending ``N``."""

    m: int
    nmax: int
    states: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.nmax < abs(self.m):
            raise ValueError(f"nmax = {self.nmax} leaves sector m = {self.m} empty")
        states = tuple(QuantumNumbers(N, self.m) for N in range(abs(self.m), self.nmax + 1, 2))
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def k(self) -> float:
        return bargmann_index(self.m)

    @cached_property
    def principal(self) -> np.ndarray:
        return np.array([q.N for q in self.states])

    def index(self, q: QuantumNumbers) -> int:
        if q.m != self.m or q.N > self.nmax:
            raise KeyError(q)
        return (q.N - abs(self.m)) // 2

    def interior(self, margin: int = 2) -> np.ndarray:
        """Indices of states with ``N <= nmax - margin``."""
        return np.flatnonzero(self.principal <= self.nmax - margin)

    def basis_vector(self, q: QuantumNumbers) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.complex128)
        v[self.index(q)] = 1.0
        return v


@dataclass(frozen=True)
class FullBasis:
    """All occupations with ``n_a + n_b <= nmax``, lexicographic in ``(n_a, n_b)``."""

    nmax: int
    states: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.nmax < 0:
            raise ValueError("nmax must be non-negative")
        states = tuple((na, nb) for na in range(self.nmax + 1) for nb in range(self.nmax + 1 - na))
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return len(self.states)

    @cached_property
    def _lookup(self) -> dict:
        return {s: i for i, s in enumerate(self.states)}

    def index(self, n_a: int, n_b: int) -> int:
        return self._lookup[(n_a, n_b)]

    @cached_property
    def principal(self) -> np.ndarray:
        return np.array([na + nb for na, nb in self.states])

    @cached_property
    def angular(self) -> np.ndarray:
        return np.array([na - nb for na, nb in self.states])

    def interior(self, margin: int = 2) -> np.ndarray:
        return np.flatnonzero(self.principal <= self.nmax - margin)

    def sector_indices(self, m: int) -> np.ndarray:
        """Positions of the sector-``m`` states, ordered by ascending ``N``."""
        idx = np.flatnonzero(self.angular == m)
        return idx[np.argsort(self.principal[idx], kind="stable")]

    def embed(self, sector: SectorBasis, vector) -> np.ndarray:
        """Place a sector vector into the full space (entries above ``nmax`` must vanish)."""
        out = np.zeros(self.dim, dtype=np.complex128)
        for q, amp in zip(sector.states, np.asarray(vector)):
            if q.N <= self.nmax:
                out[self.index(q.n_a, q.n_b)] = amp
            elif amp != 0:
                raise ValueError(f"amplitude on {q} lies outside the full basis")
        return out


class BosonMatrices(NamedTuple):
    a: object
    a_dag: object
    b: object
    b_dag: object


class Generators(NamedTuple):
    K0: object
    Kp: object
    Km: object
    J0: object
    K2: object


def _finish(mat: sp.spmatrix, sparse: bool):
    mat = mat.tocsr()
    return mat if sparse else mat.toarray()


def boson_matrices(basis: FullBasis, sparse: bool = False) -> BosonMatrices:
    """Ladder operators of both modes on the truncated basis."""
    if basis.nmax < 1:
        raise ValueError("boson matrices need nmax >= 1")
    rows_a, cols_a, vals_a = [], [], []
    rows_b, cols_b, vals_b = [], [], []
    for j, (na, nb) in enumerate(basis.states):
        if na > 0:
            rows_a.append(basis.index(na - 1, nb))
            cols_a.append(j)
            vals_a.append(sqrt(na))
        if nb > 0:
            rows_b.append(basis.index(na, nb - 1))
            cols_b.append(j)
            vals_b.append(sqrt(nb))
    shape = (basis.dim, basis.dim)
    a = sp.coo_matrix((vals_a, (rows_a, cols_a)), shape=shape, dtype=np.complex128)
    b = sp.coo_matrix((vals_b, (rows_b, cols_b)), shape=shape, dtype=np.complex128)
    return BosonMatrices(
        _finish(a, sparse), _finish(a.conj().T, sparse), _finish(b, sparse), _finish(b.conj().T, sparse)
    )


def sector_actions(state: QuantumNumbers, which: str) -> tuple[float, Optional[QuantumNumbers]]:
    """Action of ``a``, ``a+``, ``b`` or ``b+`` on ``|N, m>``.

    Returns ``(coefficient, target)``; annihilating a state gives
    ``(0.0, None)``.
    """
    N, m = state.N, state.m
    if which == "a":
        c = sqrt((N + m) / 2)
        return (c, QuantumNumbers(N - 1, m - 1)) if c else (0.0, None)
    if which == "a+":
        return sqrt((N + m) / 2 + 1), QuantumNumbers(N + 1, m + 1)
    if which == "b":
        c = sqrt((N - m) / 2)
        return (c, QuantumNumbers(N - 1, m + 1)) if c else (0.0, None)
    if which == "b+":
        return sqrt((N - m) / 2 + 1), QuantumNumbers(N + 1, m - 1)
    raise ValueError(f"unknown ladder operator {which!r}")


def _chain(state: QuantumNumbers, ops: str) -> tuple[float, Optional[QuantumNumbers]]:
    # ops applied right to left, e.g. "a+ b+" means a+ (b+ |state>)
    coeff, target = 1.0, state
    for op in reversed(ops.split()):
        c, target = sector_actions(target, op)
        coeff *= c
        if target is None:
            return 0.0, None
    return coeff, target


def _sector_generators(basis: SectorBasis, sparse: bool) -> Generators:
    d = basis.dim
    kp = sp.lil_matrix((d, d), dtype=np.complex128)
    km = sp.lil_matrix((d, d), dtype=np.complex128)
    for j, q in enumerate(basis.states):
        c, t = _chain(q, "a+ b+")
        if t is not None and t.N <= basis.nmax:
            kp[basis.index(t), j] = c
        c, t = _chain(q, "a b")
        if t is not None:
            km[basis.index(t), j] = c
    k0 = sp.diags((basis.principal + 1) / 2).astype(np.complex128)
    j0 = sp.identity(d, dtype=np.complex128) * (basis.m / 2)
    k2 = j0 @ j0 - 0.25 * sp.identity(d, dtype=np.complex128)
    return Generators(*(_finish(x, sparse) for x in (k0, kp, km, j0, k2)))


def _full_generators(basis: FullBasis, sparse: bool) -> Generators:
    a, ad, b, bd = boson_matrices(basis, sparse=True)
    eye = sp.identity(basis.dim, dtype=np.complex128, format="csr")
    na, nb = ad @ a, bd @ b
    k0 = 0.5 * (na + nb + eye)
    kp = ad @ bd
    km = a @ b
    j0 = 0.5 * (na - nb)
    k2 = j0 @ j0 - 0.25 * eye
    return Generators(*(_finish(x, sparse) for x in (k0, kp, km, j0, k2)))


def generator_matrices(basis, sparse: bool = False) -> Generators:
    """Jordan-Schwinger su(1,1) generators plus ``J0`` and the Casimir.

    ``K0 = (a+a + b+b + 1)/2``, ``K+ = a+b+``, ``K- = ab``,
    ``J0 = (a+a - b+b)/2`` and ``K2 = J0^2 - 1/4``.
    """
    if isinstance(basis, SectorBasis):
        return _sector_generators(basis, sparse)
    if isinstance(basis, FullBasis):
        return _full_generators(basis, sparse)
    raise TypeError(f"unsupported basis type {type(basis).__name__}")
