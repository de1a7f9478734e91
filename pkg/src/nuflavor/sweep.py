"""Scaled-time sweeps of entropies and flavor probabilities, written as CSV tables."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import qft_model, qm_model
from .multiqubit import Bipartition, linear_entropy

QM_COLUMNS = ("tau", "S_mass", "S_flavor", "N_e", "N_mu")
QFT_COLUMNS = (
    "tau",
    "S_nu_e", "S_nu_mu", "S_nubar_e", "S_nubar_mu", "avg_1v3",
    "S_nu_e.nu_mu", "S_nu_e.nubar_e", "S_nu_e.nubar_mu", "avg_2v2",
    "P_ee", "P_emu", "P_emu_ebar", "P_ee_mubar",
)


@dataclass(frozen=True)
class SweepConfig:
    model: str = "qft"
    sin2theta: float = 0.314
    x: float = 10.0
    p: float = 5.0
    tau_max: float = 4 * np.pi
    steps: int = 800

    def __post_init__(self):
        if self.model not in ("qm", "qft"):
            raise ValueError(f"model must be 'qm' or 'qft', got {self.model!r}")
        if not 0.0 < self.sin2theta < 1.0:
            raise ValueError(f"sin2theta must lie in (0, 1), got {self.sin2theta}")
        if not self.x > 0:
            raise ValueError(f"x must be positive, got {self.x}")
        if not self.p >= 0:
            raise ValueError(f"p must be non-negative, got {self.p}")
        if not (self.tau_max > 0 and np.isfinite(self.tau_max)):
            raise ValueError(f"tau_max must be positive, got {self.tau_max}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps}")
        if self.model == "qft" and self.x == 1.0:
            raise ValueError("the qft model needs x != 1 (scaled time is undefined otherwise)")

    @property
    def theta(self) -> float:
        return qm_model.theta_from_sin2(self.sin2theta)

    def tau_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.tau_max, int(self.steps))


def qm_row(theta: float, tau: float) -> tuple[float, ...]:
    mass = qm_model.flavor_state_qm(theta, tau, "mass")
    flavor = qm_model.flavor_state_qm(theta, tau, "flavor")
    s_mass = linear_entropy(mass, Bipartition.of(mass.modes, ["nu_1"]))
    s_flavor = linear_entropy(flavor, Bipartition.of(flavor.modes, ["nu_e"]))
    n_e, n_mu = qm_model.flavor_numbers(theta, tau)
    return (tau, s_mass, s_flavor, n_e, n_mu)


def qft_row(theta: float, x: float, p: float, tau: float) -> tuple[float, ...]:
    singles = [
        qft_model.entropy_1v3_closed("flavor", m, theta, x, p, tau)
        for m in qft_model.FLAVOR_MODES
    ]
    balanced = [
        qft_model.entropy_2v2_closed("flavor", side, theta, x, p, tau)
        for side in qft_model.BALANCED_SIDES["flavor"]
    ]
    probs = qft_model.flavor_coeffs(theta, x, p, tau).probabilities()
    return (tau, *singles, sum(singles) / 4, *balanced, sum(balanced) / 3, *probs)


def run_sweep(config: SweepConfig) -> tuple[tuple[str, ...], list[tuple[float, ...]]]:
    theta = config.theta
    taus = config.tau_grid()
    if config.model == "qm":
        return QM_COLUMNS, [qm_row(theta, float(t)) for t in taus]
    return QFT_COLUMNS, [qft_row(theta, config.x, config.p, float(t)) for t in taus]


def format_float(value: float) -> str:
    """At most 12 significant digits, no trailing zeros, locale independent."""
    text = format(float(value), ".12g")
    return "0" if text == "-0" else text


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_float(v) for v in row])
    return buf.getvalue()


def write_sweep(config: SweepConfig, path: str | Path) -> Path:
    columns, rows = run_sweep(config)
    path = Path(path)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(to_csv(columns, rows))
    return path
