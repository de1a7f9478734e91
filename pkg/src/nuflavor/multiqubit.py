"""Dense N-qubit occupation-number states.

Basis convention: the mode at position 0 is the most significant bit of the
basis index, so with modes ``(a, b, c, d)`` the ket ``|1000>`` has index 8.
This keeps the left-to-right ket notation and the index in the same order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
EIGEN_TOL = 1e-12


def basis_index(occupations: Sequence[int], n_modes: int | None = None) -> int:
    """Map a tuple of 0/1 occupations (ordered by mode position) to an index."""
    if n_modes is not None and len(occupations) != n_modes:
        raise ValueError(
            f"expected {n_modes} occupations, got {len(occupations)}"
        )
    index = 0
    for bit in occupations:
        if bit not in (0, 1):
            raise ValueError(f"occupation must be 0 or 1, got {bit!r}")
        index = (index << 1) | int(bit)
    return index


def occupations(index: int, n_modes: int) -> tuple[int, ...]:
    """Inverse of :func:`basis_index`."""
    if not 0 <= index < 2**n_modes:
        raise ValueError(f"index {index} out of range for {n_modes} modes")
    return tuple((index >> (n_modes - 1 - pos)) & 1 for pos in range(n_modes))


def _check_modes(modes: Sequence[str]) -> tuple[str, ...]:
    modes = tuple(modes)
    if not modes:
        raise ValueError("a state needs at least one mode")
    if len(set(modes)) != len(modes):
        raise ValueError(f"mode labels must be unique: {modes}")
    return modes


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over ``2**len(modes)`` occupation kets.

    The amplitudes are stored read-only; construction never renormalizes.
    """

    modes: tuple[str, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        modes = _check_modes(self.modes)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2 ** len(modes):
            raise ValueError(
                f"{len(modes)} modes need {2 ** len(modes)} amplitudes, got {amps.size}"
            )
        norm2 = float(np.vdot(amps, amps).real)
        if norm2 == 0.0:
            raise ValueError("zero-norm amplitude vector")
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_kets(cls, modes: Sequence[str], kets: Mapping[str, complex]) -> "PureState":
        """Build a state from ``{"1000": amp, ...}`` bit strings."""
        modes = _check_modes(modes)
        amps = np.zeros(2 ** len(modes), dtype=np.complex128)
        for ket, amp in kets.items():
            bits = [int(ch) for ch in ket]
            amps[basis_index(bits, len(modes))] += amp
        return cls(modes, amps)

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    def position(self, mode: str) -> int:
        try:
            return self.modes.index(mode)
        except ValueError:
            raise ValueError(f"unknown mode {mode!r}; state has {self.modes}") from None

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def support(self) -> list[str]:
        """Bit strings of kets carrying non-zero amplitude."""
        n = self.n_modes
        return [
            "".join(map(str, occupations(i, n)))
            for i in np.flatnonzero(self.amplitudes != 0)
        ]

    def occupation_probability(self, mode: str) -> float:
        """Probability that ``mode`` is occupied."""
        pos = self.position(mode)
        shift = self.n_modes - 1 - pos
        idx = np.arange(self.amplitudes.size)
        return float(self.probabilities()[(idx >> shift) & 1 == 1].sum())


@dataclass(frozen=True)
class DensityMatrix:
    modes: tuple[str, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        modes = _check_modes(self.modes)
        rho = np.array(self.matrix, dtype=np.complex128)
        dim = 2 ** len(modes)
        if rho.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {np.trace(rho).real!r}, not 1")
        if np.linalg.eigvalsh(rho).min() < -EIGEN_TOL:
            raise ValueError("density matrix has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "matrix", rho)


@dataclass(frozen=True, eq=False)
class Bipartition:
    """Unordered split of a mode set into two non-empty halves.

    ``Bipartition({"a"}, {"b"}) == Bipartition({"b"}, {"a"})``.
    """

    side_a: frozenset[str]
    side_b: frozenset[str]

    def __post_init__(self):
        a, b = frozenset(self.side_a), frozenset(self.side_b)
        if not a or not b:
            raise ValueError("both sides of a bipartition must be non-empty")
        if a & b:
            raise ValueError(f"sides overlap on {sorted(a & b)}")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @classmethod
    def of(cls, modes: Iterable[str], side_a: Iterable[str]) -> "Bipartition":
        """Split ``modes`` into ``side_a`` and its complement."""
        modes = frozenset(modes)
        side_a = frozenset(side_a)
        if not side_a <= modes:
            raise ValueError(f"unknown modes {sorted(side_a - modes)}")
        return cls(side_a, modes - side_a)

    @property
    def modes(self) -> frozenset[str]:
        return self.side_a | self.side_b

    def swapped(self) -> "Bipartition":
        return Bipartition(self.side_b, self.side_a)

    def _key(self):
        return frozenset((self.side_a, self.side_b))

    def __eq__(self, other):
        if not isinstance(other, Bipartition):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


@dataclass(frozen=True)
class NumberObservable:
    """Weighted sum of mode occupation numbers, diagonal in the occupation basis."""

    weights: Mapping[str, float]

    def eigenvalues(self, modes: Sequence[str]) -> np.ndarray:
        """Eigenvalue of every basis ket for a state over ``modes``."""
        unknown = set(self.weights) - set(modes)
        if unknown:
            raise ValueError(f"observable references unknown modes {sorted(unknown)}")
        n = len(modes)
        idx = np.arange(2**n)
        values = np.zeros(2**n)
        for mode, w in self.weights.items():
            shift = n - 1 - modes.index(mode)
            values += w * ((idx >> shift) & 1)
        return values


def partial_trace(state: PureState, keep: Iterable[str]) -> DensityMatrix:
    """Reduced density matrix on ``keep``; retained modes stay in state order."""
    keep = set(keep)
    unknown = keep - set(state.modes)
    if unknown:
        raise ValueError(f"unknown modes {sorted(unknown)}")
    if not keep or len(keep) == state.n_modes:
        raise ValueError("keep must be a non-empty proper subset of the modes")
    kept = [i for i, m in enumerate(state.modes) if m in keep]
    traced = [i for i, m in enumerate(state.modes) if m not in keep]
    psi = state.amplitudes.reshape((2,) * state.n_modes)
    psi = np.transpose(psi, kept + traced).reshape(2 ** len(kept), -1)
    rho = psi @ psi.conj().T
    # exact Hermitian symmetrization; psi @ psi^H is Hermitian up to rounding
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(tuple(state.modes[i] for i in kept), rho)


def purity(dm: DensityMatrix) -> float:
    """Tr[rho^2]."""
    rho = dm.matrix
    # Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(rho) ** 2))


def entropy_prefactor(n_a: int, n_total: int) -> float:
    d = min(2**n_a, 2 ** (n_total - n_a))
    return d / (d - 1)


def linear_entropy(state: PureState, bipartition: Bipartition) -> float:
    """(d/(d-1)) (1 - Tr rho_A^2) with d = min(2^n, 2^(N-n))."""
    if bipartition.modes != frozenset(state.modes):
        raise ValueError(
            f"bipartition covers {sorted(bipartition.modes)}, state has {state.modes}"
        )
    # Always trace down to the side holding the first mode so (A;B) and (B;A)
    # take the same arithmetic path.
    side = bipartition.side_a if state.modes[0] in bipartition.side_a else bipartition.side_b
    rho = partial_trace(state, side)
    return entropy_prefactor(len(side), state.n_modes) * (1.0 - purity(rho))


def bipartitions(modes: Sequence[str], n: int) -> list[Bipartition]:
    """All size-``n`` subsets of ``modes`` as side A, in lexicographic order.

    For ``n == len(modes) / 2`` every unordered split appears twice.
    """
    return [Bipartition.of(modes, side) for side in combinations(modes, n)]


def average_linear_entropy(state: PureState, n: int) -> float:
    """Mean linear entropy over all C(N, n) choices of an n-mode side A."""
    N = state.n_modes
    if not 1 <= n < N:
        raise ValueError(f"n must satisfy 1 <= n < {N}, got {n}")
    total = sum(linear_entropy(state, bp) for bp in bipartitions(state.modes, n))
    return total / comb(N, n)


def observable_moments(state: PureState, obs: NumberObservable) -> tuple[float, float]:
    """Mean and variance of a diagonal number observable."""
    values = obs.eigenvalues(state.modes)
    probs = state.probabilities()
    mean = float(probs @ values)
    variance = float(probs @ (values - mean) ** 2)
    return mean, variance


def permute_modes(state: PureState, order: Sequence[str]) -> PureState:
    """Same state with its modes relabelled into ``order``."""
    if sorted(order) != sorted(state.modes):
        raise ValueError(f"{order} is not a permutation of {state.modes}")
    axes = [state.position(m) for m in order]
    psi = np.transpose(state.amplitudes.reshape((2,) * state.n_modes), axes)
    return PureState(tuple(order), psi.reshape(-1))


def random_state(n_modes: int, rng: np.random.Generator, modes: Sequence[str] | None = None) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    if modes is None:
        modes = tuple(f"q{i}" for i in range(n_modes))
    amps = rng.normal(size=2**n_modes) + 1j * rng.normal(size=2**n_modes)
    amps /= np.linalg.norm(amps)
    return PureState(tuple(modes), amps)
