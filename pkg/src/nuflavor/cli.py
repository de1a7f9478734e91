"""Command-line entry point: ``nuflavor {sweep,verify,bogoliubov}``."""
from __future__ import annotations

import argparse
import sys
from math import pi

from . import dirac
from .sweep import SweepConfig, format_float, write_sweep
from .verify import run_verify


def _bogoliubov_text(x: float, p: float, fmt: str) -> str:
    mm = dirac.from_dimensionless(x, p)
    bg = dirac.bogoliubov(mm)
    fields = [
        ("omega1", mm.omega1),
        ("omega2", mm.omega2),
        ("U", bg.U),
        ("V", bg.V),
        ("U2_plus_V2", bg.U**2 + bg.V**2),
    ]
    if fmt == "csv":
        return ",".join(k for k, _ in fields) + "\n" + ",".join(format_float(v) for _, v in fields) + "\n"
    return "".join(f"{k:<11s} {v:.12g}\n" for k, v in fields)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nuflavor",
        description="Flavor-mode entanglement of oscillating neutrinos.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="write entropies over a scaled-time grid as CSV")
    sw.add_argument("--model", choices=("qm", "qft"), default="qft")
    sw.add_argument("--sin2theta", type=float, default=0.314)
    sw.add_argument("--x", type=float, default=10.0, help="mass ratio m2/m1")
    sw.add_argument("--p", type=float, default=5.0, help="momentum over sqrt(m1 m2)")
    sw.add_argument("--tau-max", type=float, default=4 * pi)
    sw.add_argument("--steps", type=int, default=800)
    sw.add_argument("--out", required=True, help="output CSV path")

    vf = sub.add_parser("verify", help="run the closed-form/oracle consistency suite")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--trials", type=int, default=1000)
    vf.add_argument("--format", choices=("text", "csv"), default="text")

    bg = sub.add_parser("bogoliubov", help="print frequencies and |U|, |V| for one (x, p)")
    bg.add_argument("--x", type=float, required=True)
    bg.add_argument("--p", type=float, required=True)
    bg.add_argument("--format", choices=("text", "csv"), default="text")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            config = SweepConfig(args.model, args.sin2theta, args.x, args.p, args.tau_max, args.steps)
            write_sweep(config, args.out)
            return 0
        if args.command == "verify":
            report = run_verify(args.seed, args.trials)
            sys.stdout.write(report.to_csv() if args.format == "csv" else report.to_text())
            return 0 if report.passed else 1
        sys.stdout.write(_bogoliubov_text(args.x, args.p, args.format))
        return 0
    except (ValueError, OSError) as exc:
        print(f"nuflavor {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
