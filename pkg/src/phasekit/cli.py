"""Command line entry point.

Exit codes: 0 success, 1 configuration/usage problems, 2 numerical failures
(including verification checks that do not pass).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import ConfigError, NumericalError
from .presets import PRESET_NAMES, run_figure
from .scenario import apply_overrides, parse_config
from .scenario import run as run_config
from .verify import run_verification


class _Parser(argparse.ArgumentParser):
    # usage problems are configuration problems: exit 1, not argparse's 2
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phasekit",
                     description="Two-site phase-operator dynamics datasets")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    run_p = sub.add_parser("run", help="run one scenario config, write its CSV")
    run_p.add_argument("--config", required=True, help="path to key=value config")
    run_p.add_argument("--tau-max", type=float, default=None,
                       help="override the config's tau_max")
    run_p.add_argument("--steps", type=int, default=None,
                       help="override the config's grid size")
    run_p.add_argument("--integrator", choices=("eigen", "rk4"), default=None,
                       help="override the config's integrator")

    fig_p = sub.add_parser("figure", help="emit a named preset dataset bundle")
    fig_p.add_argument("preset", help=f"one of {', '.join(PRESET_NAMES)}")
    fig_p.add_argument("--out", required=True, help="output directory")

    ver_p = sub.add_parser("verify", help="run the self-check battery")
    ver_p.add_argument("--n-max", type=int, default=12,
                       help="largest boson particle number to sweep (default 12)")
    ver_p.add_argument("--tol", type=float, default=1e-12,
                       help="tolerance for the operator-algebra checks (default 1e-12)")

    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    config_path = Path(args.config)
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"phasekit: cannot read config: {exc}", file=sys.stderr)
        return 1
    cfg = parse_config(text)
    cfg = apply_overrides(cfg, tau_max=args.tau_max, steps=args.steps,
                          integrator=args.integrator)
    target = run_config(cfg)
    print(f"wrote {target}")
    return 0


def _cmd_figure(args: argparse.Namespace) -> int:
    written = run_figure(args.preset, args.out)
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(n_max=args.n_max, tol=args.tol)
    for line in report.lines():
        print(line)
    return 0 if report.ok else 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "figure":
            return _cmd_figure(args)
        return _cmd_verify(args)
    except ConfigError as exc:
        print(f"phasekit: config error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"phasekit: numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
