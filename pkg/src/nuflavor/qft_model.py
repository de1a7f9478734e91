"""Field-theoretic electron-neutrino state as a four-qubit mode state.

Modes are particle and antiparticle occupations of the two mass fields
``(nu_1, nu_2, nubar_1, nubar_2)`` or of the two flavor fields
``(nu_e, nu_mu, nubar_e, nubar_mu)``. Time enters through the scaled time
``tau = (w2 - w1) t``; the absolute frequencies come from the mass ratio
``x`` and scaled momentum ``p`` with m1 = 1.

The closed-form entropies below are written directly from the coefficient
magnitudes and never go through a density matrix; the state constructors feed
the brute-force partial trace in :mod:`nuflavor.multiqubit`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import cos, sin

import numpy as np

from . import dirac
from .multiqubit import Bipartition, NumberObservable, PureState, observable_moments
from .qm_model import _check_theta, flavor_state_qm

MASS_MODES = ("nu_1", "nu_2", "nubar_1", "nubar_2")
FLAVOR_MODES = ("nu_e", "nu_mu", "nubar_e", "nubar_mu")
BASES = {"mass": MASS_MODES, "flavor": FLAVOR_MODES}

# The three distinct balanced splits, named by the side holding the first mode.
BALANCED_SIDES = {
    "mass": (("nu_1", "nu_2"), ("nu_1", "nubar_1"), ("nu_1", "nubar_2")),
    "flavor": (("nu_e", "nu_mu"), ("nu_e", "nubar_e"), ("nu_e", "nubar_mu")),
}

# Number and charge observables tied to the balanced flavor splits.
OBSERVABLES = {
    "N_e+N_mu": {"nu_e": 1.0, "nu_mu": 1.0},
    "Q_e": {"nu_e": 1.0, "nubar_e": -1.0},
    "N_e-N_mubar": {"nu_e": 1.0, "nubar_mu": -1.0},
}
OBSERVABLE_SPLIT = {
    "N_e+N_mu": ("nu_e", "nu_mu"),
    "Q_e": ("nu_e", "nubar_e"),
    "N_e-N_mubar": ("nu_e", "nubar_mu"),
}


def modes_for(basis: str) -> tuple[str, ...]:
    try:
        return BASES[basis]
    except KeyError:
        raise ValueError(f"basis must be 'mass' or 'flavor', got {basis!r}") from None


def balanced_splits(basis: str) -> list[Bipartition]:
    modes = modes_for(basis)
    return [Bipartition.of(modes, side) for side in BALANCED_SIDES[basis]]


@dataclass(frozen=True)
class Kinematics:
    """Frequencies and Bogoliubov magnitudes for one (x, p)."""

    omega1: float
    omega2: float
    U: float
    V: float

    def times(self, tau: float) -> tuple[float, float]:
        """Phases ``(w1 t, (w2 + w1) t)`` at scaled time tau."""
        if self.omega2 == self.omega1:
            raise ValueError("scaled time is undefined for equal masses (x = 1)")
        t = tau / (self.omega2 - self.omega1)
        return self.omega1 * t, (self.omega2 + self.omega1) * t


@lru_cache(maxsize=256)
def kinematics(x: float, p: float) -> Kinematics:
    mm = dirac.from_dimensionless(x, p)
    bg = dirac.bogoliubov(mm, r=2)
    return Kinematics(mm.omega1, mm.omega2, bg.U, bg.V)


@dataclass(frozen=True)
class FlavorCoeffs:
    ee: complex
    emu: complex
    emu_ebar: complex  # alpha_e^dag alpha_mu^dag beta_e^dag term
    ee_mubar: complex  # alpha_e^dag alpha_mu^dag beta_mu^dag term

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.ee, self.emu, self.emu_ebar, self.ee_mubar)

    def probabilities(self) -> tuple[float, float, float, float]:
        return tuple(abs(c) ** 2 for c in self.as_tuple())


def _resolve(x: float, p: float, uv: tuple[float, float] | None) -> tuple[Kinematics, float, float]:
    kin = kinematics(float(x), float(p))
    U, V = (kin.U, kin.V) if uv is None else uv
    return kin, U, V


def flavor_coeffs(theta: float, x: float, p: float, tau: float,
                  uv: tuple[float, float] | None = None) -> FlavorCoeffs:
    """Time-dependent amplitudes of the electron-neutrino state in the flavor basis.

    ``uv`` overrides the Bogoliubov magnitudes, e.g. ``(1, 0)`` for the
    quantum-mechanical limit.
    """
    _check_theta(theta)
    kin, U, V = _resolve(x, p, uv)
    w1t, wsum_t = kin.times(tau)
    c, s = cos(theta), sin(theta)
    glob = np.exp(-1j * w1t)
    e_minus = np.exp(-1j * tau)
    e_plus = np.exp(-1j * wsum_t)
    return FlavorCoeffs(
        ee=complex(glob * (c * c + s * s * (e_minus * U * U + e_plus * V * V))),
        emu=complex(glob * U * c * s * (e_minus - 1.0)),
        emu_ebar=complex(glob * V * c * s * (1.0 - e_plus)),
        ee_mubar=complex(glob * U * V * s * s * (e_plus - e_minus)),
    )


def state_mass_basis(theta: float, x: float, p: float, tau: float,
                     uv: tuple[float, float] | None = None) -> PureState:
    """Electron neutrino over (nu_1, nu_2, nubar_1, nubar_2).

    The single-nu_2 ket carries ``U sin(theta)`` so that the state is normalized.
    """
    _check_theta(theta)
    kin, U, V = _resolve(x, p, uv)
    w1t, wsum_t = kin.times(tau)
    c, s = cos(theta), sin(theta)
    glob = np.exp(-1j * w1t)
    return PureState.from_kets(MASS_MODES, {
        "1000": glob * c,
        "0100": glob * np.exp(-1j * tau) * U * s,
        "1110": glob * np.exp(-1j * wsum_t) * V * s,
    })


def state_flavor_basis(theta: float, x: float, p: float, tau: float,
                       uv: tuple[float, float] | None = None) -> PureState:
    coeffs = flavor_coeffs(theta, x, p, tau, uv)
    return PureState.from_kets(FLAVOR_MODES, {
        "1000": coeffs.ee,
        "0100": coeffs.emu,
        "1110": coeffs.emu_ebar,
        "1101": coeffs.ee_mubar,
    })


def state(basis: str, theta: float, x: float, p: float, tau: float,
          uv: tuple[float, float] | None = None) -> PureState:
    if modes_for(basis) is MASS_MODES:
        return state_mass_basis(theta, x, p, tau, uv)
    return state_flavor_basis(theta, x, p, tau, uv)


def embedded_qm_state(theta: float, tau: float) -> PureState:
    """Pontecorvo flavor state on the four flavor modes, antiparticle modes empty."""
    qm = flavor_state_qm(theta, tau, "flavor")
    amps = np.zeros(16, dtype=np.complex128)
    # |ij> -> |ij00>
    amps[0b1000] = qm.amplitudes[0b10]
    amps[0b0100] = qm.amplitudes[0b01]
    return PureState(FLAVOR_MODES, amps)


def _mass_entropies_1v3(theta, U, V):
    s2 = sin(theta) ** 2
    return {
        "nu_1": 4 * U**2 * s2 * (1 - U**2 * s2),
        "nu_2": sin(2 * theta) ** 2,
        "nubar_1": 4 * V**2 * s2 * (1 - V**2 * s2),
        "nubar_2": 0.0,
    }


def entropy_1v3_closed(basis: str, mode: str, theta: float, x: float, p: float, tau: float,
                       uv: tuple[float, float] | None = None) -> float:
    """Linear entropy of one mode against the other three, from the closed forms."""
    if mode not in modes_for(basis):
        raise ValueError(f"mode {mode!r} is not a {basis}-basis mode")
    _check_theta(theta)
    if basis == "mass":
        _, U, V = _resolve(x, p, uv)
        return _mass_entropies_1v3(theta, U, V)[mode]
    a_ee, a_emu, a_ebar, a_mubar = flavor_coeffs(theta, x, p, tau, uv).probabilities()
    q = {"nu_e": a_emu, "nu_mu": a_ee, "nubar_e": a_ebar, "nubar_mu": a_mubar}[mode]
    return 4 * q * (1 - q)


def _split_key(basis: str, bipartition) -> tuple[str, str]:
    """Normalize a balanced split (Bipartition or one side) to its table key."""
    modes = modes_for(basis)
    if isinstance(bipartition, Bipartition):
        bp = bipartition
    else:
        bp = Bipartition.of(modes, bipartition)
    if bp.modes != frozenset(modes) or len(bp.side_a) != 2:
        raise ValueError(f"not a balanced {basis}-basis split: {bipartition!r}")
    side = bp.side_a if modes[0] in bp.side_a else bp.side_b
    other = next(m for m in side if m != modes[0])
    return (modes[0], other)


def entropy_2v2_closed(basis: str, bipartition, theta: float, x: float, p: float, tau: float,
                       uv: tuple[float, float] | None = None) -> float:
    """Linear entropy of a balanced 2:2 split from the closed forms.

    ``bipartition`` is a :class:`Bipartition` or the labels of either side.
    """
    key = _split_key(basis, bipartition)
    _check_theta(theta)
    if basis == "mass":
        _, U, V = _resolve(x, p, uv)
        s2 = sin(theta) ** 2
        c2t = cos(2 * theta)
        return {
            ("nu_1", "nu_2"): 4 / 3 * V**2 * s2 * (2 - V**2 + V**2 * c2t),
            ("nu_1", "nubar_1"): 2 / 3 * sin(2 * theta) ** 2,
            ("nu_1", "nubar_2"): 4 / 3 * U**2 * s2 * (2 - U**2 + U**2 * c2t),
        }[key]
    a_ee, a_emu, a_ebar, a_mubar = flavor_coeffs(theta, x, p, tau, uv).probabilities()
    first, second = {
        ("nu_e", "nu_mu"): (a_ee + a_emu, a_ebar + a_mubar),
        ("nu_e", "nubar_e"): (a_ee + a_mubar, a_emu + a_ebar),
        ("nu_e", "nubar_mu"): (a_ee + a_ebar, a_emu + a_mubar),
    }[key]
    return 4 / 3 * (1 - first**2 - second**2)


def observable(kind: str) -> NumberObservable:
    """A single mode label or one of :data:`OBSERVABLES`."""
    if kind in OBSERVABLES:
        return NumberObservable(OBSERVABLES[kind])
    if kind in MASS_MODES or kind in FLAVOR_MODES:
        return NumberObservable({kind: 1.0})
    raise ValueError(f"unknown observable {kind!r}")


def number_variance(kind: str, theta: float, x: float, p: float, tau: float,
                    uv: tuple[float, float] | None = None) -> float:
    """Variance of a number/charge observable in the evolved state.

    Mass-mode observables are evaluated on the mass-basis state, everything
    else on the flavor-basis state.
    """
    obs = observable(kind)
    basis = "mass" if kind in MASS_MODES else "flavor"
    _, variance = observable_moments(state(basis, theta, x, p, tau, uv), obs)
    return variance
