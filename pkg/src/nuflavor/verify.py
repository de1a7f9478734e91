"""Consistency suite: closed forms against the partial-trace oracle, identities and limits.

Every check reports the largest deviation it saw and the tolerance it was
held to. Random checks draw from ``numpy.random.default_rng(seed)`` and are
skipped when ``trials == 0``; grid checks always run.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from . import dirac, qft_model, qm_model
from .multiqubit import (
    Bipartition,
    NumberObservable,
    linear_entropy,
    observable_moments,
    partial_trace,
    permute_modes,
    purity,
    random_state,
)

REF_SIN2THETA = 0.314
REF_X = 10.0
REF_P = 5.0
QM_LIMIT_P = 1e4

ALGEBRA_TOL = 1e-12
ORACLE_TOL = 1e-10
LIMIT_TOL = 1e-3
RATIO_FLOOR = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_error)) and self.max_error <= self.tolerance


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)
    ratios: dict[str, float] = field(default_factory=dict)

    def add(self, name: str, errors, tolerance: float):
        errors = np.atleast_1d(np.asarray(errors, dtype=float))
        worst = float(np.max(errors)) if errors.size else 0.0
        self.checks.append(Check(name, worst, tolerance))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status}  {c.name:<44s} max_err={c.max_error:.3e}  tol={c.tolerance:.0e}")
        for name, value in self.ratios.items():
            lines.append(f"RATIO {name:<44s} {value:.12g}")
        failed = sum(not c.passed for c in self.checks)
        lines.append(f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = ["kind,name,max_error,tolerance,passed"]
        for c in self.checks:
            lines.append(f"check,{c.name},{c.max_error:.6e},{c.tolerance:.0e},{int(c.passed)}")
        for name, value in self.ratios.items():
            lines.append(f"ratio,{name},{value:.12g},,")
        return "\n".join(lines) + "\n"


def tau_grid(points: int = 200, tau_max: float = 4 * pi) -> np.ndarray:
    return np.linspace(0.0, tau_max, points)


def _multiqubit_checks(report: VerifyReport, rng: np.random.Generator, trials: int):
    trace_err, order_err, sym_err, range_err, dual_err = [], [], [], [], []
    for i in range(trials):
        n = 3 + i % 2
        st = random_state(n, rng)
        k = int(rng.integers(1, n))
        keep = [str(m) for m in rng.choice(st.modes, size=k, replace=False)]
        rho = partial_trace(st, keep)
        trace_err.append(abs(np.trace(rho.matrix).real - 1.0))
        shuffled = permute_modes(st, [str(m) for m in rng.permutation(st.modes)])
        rho2 = partial_trace(shuffled, keep)
        # reorder rho2's retained modes into rho's order before comparing
        perm = [rho2.modes.index(m) for m in rho.modes]
        kk = len(perm)
        r2 = rho2.matrix.reshape((2,) * (2 * kk))
        r2 = np.transpose(r2, perm + [kk + q for q in perm]).reshape(2**kk, 2**kk)
        order_err.append(np.max(np.abs(rho.matrix - r2)))
        bp = Bipartition.of(st.modes, keep)
        s_ab = linear_entropy(st, bp)
        sym_err.append(abs(s_ab - linear_entropy(st, bp.swapped())))
        range_err.append(max(0.0, -s_ab, s_ab - 1.0))
        rest = [m for m in st.modes if m not in keep]
        dual_err.append(abs(purity(rho) - purity(partial_trace(st, rest))))
    report.add("multiqubit: partial trace unit trace", trace_err, ALGEBRA_TOL)
    report.add("multiqubit: partial trace order independence", order_err, ALGEBRA_TOL)
    report.add("multiqubit: entropy side symmetry", sym_err, ALGEBRA_TOL)
    report.add("multiqubit: entropy range [0, 1]", range_err, ALGEBRA_TOL)
    report.add("multiqubit: Schmidt purity duality", dual_err, ALGEBRA_TOL)


def _dirac_checks(report: VerifyReport, rng: np.random.Generator, trials: int):
    norm_err, u_err, v_err = [], [], []
    for _ in range(trials):
        mm = dirac.from_dimensionless(rng.uniform(1.0, 100.0), rng.uniform(0.01, 100.0))
        bg = dirac.bogoliubov(mm)
        norm_err.append(abs(bg.U**2 + bg.V**2 - 1.0))
        f = dirac.bogoliubov_forms(mm)
        u_err.append(max(abs(f.U_uu - f.U_vv), abs(f.U_uu - f.U_uu_swapped), abs(f.U_vv - f.U_vv_swapped)))
        v_err.append(abs(f.V_12 - f.V_21))
    report.add("dirac: |U|^2 + |V|^2 = 1", norm_err, ALGEBRA_TOL)
    report.add("dirac: u-form and v-form of |U| agree", u_err, ALGEBRA_TOL)
    report.add("dirac: (1,2) and (2,1) forms of |V| agree", v_err, ALGEBRA_TOL)


def _qm_checks(report: VerifyReport):
    taus = tau_grid()
    thetas = np.linspace(0.05, pi / 2 - 0.05, 20)
    oracle_err, var_err, mass_spread, unit_err, prob_err = [], [], [], [], []
    for theta in thetas:
        mass_vals = []
        for tau in taus:
            mass = qm_model.flavor_state_qm(theta, tau, "mass")
            flav = qm_model.flavor_state_qm(theta, tau, "flavor")
            s_m = linear_entropy(mass, Bipartition.of(mass.modes, ["nu_1"]))
            s_f = linear_entropy(flav, Bipartition.of(flav.modes, ["nu_e"]))
            mass_vals.append(s_m)
            s_closed = qm_model.entropy_flavor_closed(theta, tau)
            oracle_err.append(max(abs(s_m - qm_model.entropy_mass_closed(theta)), abs(s_f - s_closed)))
            _, var_e = observable_moments(flav, NumberObservable({"nu_e": 1.0}))
            _, var_mu = observable_moments(flav, NumberObservable({"nu_mu": 1.0}))
            var_err.append(max(abs(var_e - s_closed / 4), abs(var_mu - s_closed / 4)))
            u = qm_model.evolution_matrix_tau(theta, tau)
            unit_err.append(np.max(np.abs(u.conj().T @ u - np.eye(2))))
            n_e, n_mu = qm_model.flavor_numbers(theta, tau)
            prob_err.append(abs(n_e + n_mu - 1.0))
        mass_spread.append(max(mass_vals) - min(mass_vals))
    report.add("qm: closed forms vs oracle", oracle_err, ALGEBRA_TOL)
    report.add("qm: variance(N_a) = S/4", var_err, ALGEBRA_TOL)
    report.add("qm: mass entropy constant in tau", mass_spread, ALGEBRA_TOL)
    report.add("qm: evolution matrix unitary", unit_err, ALGEBRA_TOL)
    report.add("qm: N_e + N_mu = 1", prob_err, ALGEBRA_TOL)


def _qft_random_checks(report: VerifyReport, rng: np.random.Generator, trials: int):
    errs = []
    for _ in range(trials):
        theta = rng.uniform(0.0, pi / 2)
        x = rng.uniform(1.01, 100.0)
        p = rng.uniform(0.01, 100.0)
        tau = rng.uniform(0.0, 20.0)
        errs.append(abs(sum(qft_model.flavor_coeffs(theta, x, p, tau).probabilities()) - 1.0))
    report.add("qft: flavor coefficient normalization", errs, ALGEBRA_TOL)


def qft_oracle_errors(theta: float, x: float, p: float, taus) -> dict[str, float]:
    """Max |closed form - partial trace| for each of the 14 entropies."""
    errs: dict[str, float] = {}
    for basis in ("mass", "flavor"):
        modes = qft_model.modes_for(basis)
        for tau in taus:
            st = qft_model.state(basis, theta, x, p, tau)
            for m in modes:
                e = abs(qft_model.entropy_1v3_closed(basis, m, theta, x, p, tau)
                        - linear_entropy(st, Bipartition.of(modes, [m])))
                key = f"{basis}:{m}"
                errs[key] = max(errs.get(key, 0.0), e)
            for side in qft_model.BALANCED_SIDES[basis]:
                e = abs(qft_model.entropy_2v2_closed(basis, side, theta, x, p, tau)
                        - linear_entropy(st, Bipartition.of(modes, side)))
                key = f"{basis}:{'+'.join(side)}"
                errs[key] = max(errs.get(key, 0.0), e)
    return errs


def qm_limit_errors(theta: float, x: float, p: float, taus) -> tuple[list[float], list[float]]:
    """Flavor-entropy gaps to the embedded Pontecorvo state, and antiparticle-mode entropies."""
    gaps, antis = [], []
    modes = qft_model.FLAVOR_MODES
    for tau in taus:
        qm = qft_model.embedded_qm_state(theta, tau)
        for m in modes:
            bp = Bipartition.of(modes, [m])
            gaps.append(abs(qft_model.entropy_1v3_closed("flavor", m, theta, x, p, tau)
                            - linear_entropy(qm, bp)))
        for side in qft_model.BALANCED_SIDES["flavor"]:
            bp = Bipartition.of(modes, side)
            gaps.append(abs(qft_model.entropy_2v2_closed("flavor", side, theta, x, p, tau)
                            - linear_entropy(qm, bp)))
        for m in ("nubar_e", "nubar_mu"):
            antis.append(qft_model.entropy_1v3_closed("flavor", m, theta, x, p, tau))
    return gaps, antis


def variance_ratios(theta: float, x: float, p: float, taus) -> dict[str, np.ndarray]:
    """variance / S_L on each balanced flavor split, at grid points with S_L > floor."""
    out = {}
    for kind, side in qft_model.OBSERVABLE_SPLIT.items():
        vals = []
        for tau in taus:
            s = qft_model.entropy_2v2_closed("flavor", side, theta, x, p, tau)
            if s > RATIO_FLOOR:
                vals.append(qft_model.number_variance(kind, theta, x, p, tau) / s)
        out[kind] = np.array(vals)
    return out


def _qft_grid_checks(report: VerifyReport):
    theta = qm_model.theta_from_sin2(REF_SIN2THETA)
    x, p = REF_X, REF_P
    taus = tau_grid()
    errs = qft_oracle_errors(theta, x, p, taus)
    report.add("qft: 14 closed-form entropies vs oracle", list(errs.values()), ORACLE_TOL)

    gaps, antis = qm_limit_errors(theta, x, QM_LIMIT_P, taus)
    report.add("qft: QM limit flavor entropies (p=1e4)", gaps, LIMIT_TOL)
    report.add("qft: QM limit antiparticle entropies", antis, LIMIT_TOL)

    s2m = [qft_model.entropy_1v3_closed("mass", "nu_2", theta, x, p, t) for t in taus]
    s13m = [qft_model.entropy_2v2_closed("mass", ("nu_1", "nubar_1"), theta, x, p, t) for t in taus]
    report.add("qft: mass entropies constant in tau", [np.ptp(s2m), np.ptp(s13m)], ALGEBRA_TOL)

    var_err, vanish = [], []
    for basis in ("mass", "flavor"):
        modes = qft_model.modes_for(basis)
        for tau in taus:
            st = qft_model.state(basis, theta, x, p, tau)
            for m in modes:
                _, var = observable_moments(st, NumberObservable({m: 1.0}))
                var_err.append(abs(var - linear_entropy(st, Bipartition.of(modes, [m])) / 4))
            if basis == "mass":
                vanish.append(linear_entropy(st, Bipartition.of(modes, ["nubar_2"])))
    report.add("qft: variance(N_a) = S/4, all 8 modes", var_err, ALGEBRA_TOL)
    report.add("qft: nubar_2 entropy vanishes", vanish, 1e-14)

    for kind, r in variance_ratios(theta, x, p, taus).items():
        report.add(f"qft: variance/S ratio constant [{kind}]", [np.ptp(r)] if r.size else [np.inf], ORACLE_TOL)
        report.ratios[f"variance/S_L [{kind}]"] = float(np.mean(r))


def run_verify(seed: int = 0, trials: int = 1000) -> VerifyReport:
    if trials < 0:
        raise ValueError(f"trials must be non-negative, got {trials}")
    rng = np.random.default_rng(seed)
    report = VerifyReport()
    if trials:
        _multiqubit_checks(report, rng, trials)
        _dirac_checks(report, rng, trials)
        _qft_random_checks(report, rng, trials)
    _qm_checks(report)
    _qft_grid_checks(report)
    return report
