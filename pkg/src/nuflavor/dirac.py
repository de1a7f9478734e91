"""Helicity spinors for momentum along +z and the mass-mixing Bogoliubov coefficients.

Dirac (standard) representation, spinors normalized to ``u^dagger u = 1``.
The two-spinor of helicity index ``r`` is the sigma_z eigenvector with
eigenvalue ``(-1)**r``: ``r=1`` is spin down, ``r=2`` spin up. With this
choice ``eps_r * u_1^dagger v_2`` is non-negative whenever ``m2 >= m1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)
_I2 = np.eye(2, dtype=np.complex128)
_Z2 = np.zeros((2, 2), dtype=np.complex128)

GAMMA0 = np.block([[_I2, _Z2], [_Z2, -_I2]])
GAMMA = tuple(np.block([[_Z2, s], [-s, _Z2]]) for s in SIGMA)


@dataclass(frozen=True)
class MassMomentum:
    m1: float
    m2: float
    k: float

    def __post_init__(self):
        if not (self.m1 > 0 and self.m2 > 0):
            raise ValueError(f"masses must be positive, got m1={self.m1}, m2={self.m2}")
        if not self.k >= 0:
            raise ValueError(f"momentum must be non-negative, got k={self.k}")

    def mass(self, which: int) -> float:
        if which == 1:
            return self.m1
        if which == 2:
            return self.m2
        raise ValueError(f"mass index must be 1 or 2, got {which}")

    def omega(self, which: int) -> float:
        m = self.mass(which)
        return sqrt(self.k * self.k + m * m)

    @property
    def omega1(self) -> float:
        return self.omega(1)

    @property
    def omega2(self) -> float:
        return self.omega(2)


def from_dimensionless(x: float, p: float) -> MassMomentum:
    """Masses and momentum from ``x = m2/m1`` and ``p = k/sqrt(m1 m2)``, with m1 = 1."""
    if not x > 0:
        raise ValueError(f"mass ratio x must be positive, got {x}")
    if not p >= 0:
        raise ValueError(f"scaled momentum p must be non-negative, got {p}")
    return MassMomentum(1.0, float(x), p * sqrt(x))


def helicity_epsilon(r: int) -> int:
    _check_helicity(r)
    return (-1) ** r


def _check_helicity(r: int):
    if r not in (1, 2):
        raise ValueError(f"helicity index must be 1 or 2, got {r}")


def _two_spinor(r: int) -> np.ndarray:
    _check_helicity(r)
    return np.array([1, 0], dtype=np.complex128) if r == 2 else np.array([0, 1], dtype=np.complex128)


def spinor_u(mm: MassMomentum, which: int, r: int) -> np.ndarray:
    """Positive-energy spinor u^r_{k,i} for momentum (0, 0, k)."""
    m, w = mm.mass(which), mm.omega(which)
    xi = _two_spinor(r)
    norm = sqrt((w + m) / (2 * w))
    # scale factors are formed once so equal-mass overlaps cancel exactly
    lower = norm * mm.k / (w + m)
    return np.concatenate([norm * xi, lower * (SIGMA[2] @ xi)])


def spinor_v(mm: MassMomentum, which: int, r: int) -> np.ndarray:
    """Negative-energy spinor v^r_{-k,i}, i.e. for momentum (0, 0, -k)."""
    m, w = mm.mass(which), mm.omega(which)
    eta = _two_spinor(r)
    norm = sqrt((w + m) / (2 * w))
    upper = norm * mm.k / (w + m)
    return np.concatenate([-upper * (SIGMA[2] @ eta), norm * eta])


def dirac_residual(spinor: np.ndarray, energy: float, momentum: np.ndarray, mass: float, sign: int) -> float:
    """Max-abs residual of ``(pslash - sign*m) spinor``; sign=+1 for u, -1 for v."""
    pslash = energy * GAMMA0 - sum(pi * g for pi, g in zip(momentum, GAMMA))
    return float(np.max(np.abs((pslash - sign * mass * np.eye(4)) @ spinor)))


@dataclass(frozen=True)
class BogoliubovForms:
    """The raw inner products behind |U| and |V| (before taking magnitudes)."""

    U_uu: complex  # u_1^dag u_2
    U_uu_swapped: complex  # u_2^dag u_1
    U_vv: complex  # v_1^dag v_2 (momentum -k)
    U_vv_swapped: complex
    V_12: complex  # eps_r u_1^dag v_2
    V_21: complex  # -eps_r u_2^dag v_1
    raw_12: complex  # u_1^dag v_2 without the helicity sign


def overlap(a: np.ndarray, b: np.ndarray) -> complex:
    """a^dagger b, summed elementwise so that exactly opposite terms cancel to 0."""
    return complex(np.sum(np.conj(a) * b))


def bogoliubov_forms(mm: MassMomentum, r: int = 2) -> BogoliubovForms:
    eps = helicity_epsilon(r)
    u1, u2 = spinor_u(mm, 1, r), spinor_u(mm, 2, r)
    v1, v2 = spinor_v(mm, 1, r), spinor_v(mm, 2, r)
    raw_12 = overlap(u1, v2)
    return BogoliubovForms(
        U_uu=overlap(u1, u2),
        U_uu_swapped=overlap(u2, u1),
        U_vv=overlap(v1, v2),
        U_vv_swapped=overlap(v2, v1),
        V_12=eps * raw_12,
        V_21=-eps * overlap(u2, v1),
        raw_12=raw_12,
    )


@dataclass(frozen=True)
class Bogoliubov:
    U: float
    V: float


def bogoliubov(mm: MassMomentum, r: int = 2) -> Bogoliubov:
    """|U_k| and |V_k| from explicit spinor overlaps.

    Only the magnitudes are convention independent; the phases of the raw
    overlaps depend on how u and v are phased.
    """
    forms = bogoliubov_forms(mm, r)
    return Bogoliubov(abs(forms.U_uu), abs(forms.V_12))
