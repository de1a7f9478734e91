"""Two-flavor Pontecorvo mixing: evolution, flavor numbers and two-qubit states."""
from __future__ import annotations

from math import asin, cos, isfinite, pi, sin, sqrt

import numpy as np

from .multiqubit import PureState

MASS_MODES_QM = ("nu_1", "nu_2")
FLAVOR_MODES_QM = ("nu_e", "nu_mu")


def theta_from_sin2(sin2theta: float) -> float:
    """Mixing angle in [0, pi/2] from sin^2(theta)."""
    if not 0.0 <= sin2theta <= 1.0:
        raise ValueError(f"sin^2(theta) must lie in [0, 1], got {sin2theta}")
    return asin(sqrt(sin2theta))


def _check_theta(theta: float):
    if not (isfinite(theta) and 0.0 <= theta <= pi / 2):
        raise ValueError(f"mixing angle must lie in [0, pi/2], got {theta}")


def mixing_matrix(theta: float) -> np.ndarray:
    """Rotation taking mass states (nu_1, nu_2) to flavor states (nu_e, nu_mu)."""
    _check_theta(theta)
    c, s = cos(theta), sin(theta)
    return np.array([[c, s], [-s, c]])


def evolution_matrix(theta: float, omega1: float, omega2: float, t: float) -> np.ndarray:
    """U(theta) diag(exp(-i w1 t), exp(-i w2 t)) U(theta)^-1, rows/cols ordered (e, mu)."""
    rot = mixing_matrix(theta)
    phases = np.diag(np.exp(-1j * np.array([omega1, omega2]) * t))
    return rot @ phases @ rot.T


def evolution_matrix_tau(theta: float, tau: float, phase: float = 0.0) -> np.ndarray:
    """Evolution matrix at scaled time ``tau = (w2 - w1) t``.

    ``phase`` is ``w1 t``; it only contributes a global phase.
    """
    return evolution_matrix(theta, phase, phase + tau, 1.0)


def flavor_numbers(theta: float, tau: float) -> tuple[float, float]:
    """<N_e> and <N_mu> in the evolved electron-neutrino state."""
    row = evolution_matrix_tau(theta, tau)[0]
    return float(abs(row[0]) ** 2), float(abs(row[1]) ** 2)


def transition_probability(theta: float, tau: float) -> float:
    """|U_emu(t)|^2 = sin^2(2 theta) sin^2(tau/2)."""
    return sin(2 * theta) ** 2 * sin(tau / 2) ** 2


def flavor_state_qm(theta: float, tau: float, basis: str = "flavor", phase: float = 0.0) -> PureState:
    """Evolved electron neutrino as a two-qubit occupation state.

    ``basis="mass"`` uses modes (nu_1, nu_2), ``basis="flavor"`` uses (nu_e, nu_mu).
    """
    if basis == "mass":
        _check_theta(theta)
        amps = {
            "10": np.exp(-1j * phase) * cos(theta),
            "01": np.exp(-1j * (phase + tau)) * sin(theta),
        }
        return PureState.from_kets(MASS_MODES_QM, amps)
    if basis == "flavor":
        row = evolution_matrix_tau(theta, tau, phase)[0]
        return PureState.from_kets(FLAVOR_MODES_QM, {"10": row[0], "01": row[1]})
    raise ValueError(f"basis must be 'mass' or 'flavor', got {basis!r}")


def entropy_mass_closed(theta: float) -> float:
    return sin(2 * theta) ** 2


def entropy_flavor_closed(theta: float, tau: float) -> float:
    """4 |U_ee|^2 |U_emu|^2 via the oscillation formula."""
    p_emu = transition_probability(theta, tau)
    return 4.0 * (1.0 - p_emu) * p_emu
