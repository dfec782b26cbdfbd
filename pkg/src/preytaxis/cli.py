"""Command-line front end.

Subcommands: ``run`` executes one scenario file and writes its run
directory; ``sweep`` fans a base scenario out over one numeric key;
``accept`` runs the numbered acceptance checks; ``oracle`` prints the
independent reference computations.  Exit codes: 0 ok, 1 assertion
failure, 2 blow-up, 3 config error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .acceptance import criterion_numbers, run_criterion
from .config import ConfigError, build_config, parse_items, scenario_items
from .dynamics import BlowUp
from .model import ModelParams, steady_states
from .oracle import heat_eigenmode_error, homogeneous_ode, refinement_order
from .runner import execute, run_scenario, sweep

__all__ = ["main", "console_main"]


class _Parser(argparse.ArgumentParser):
    """Argument errors map to the config-error exit code, not argparse's 2."""

    def error(self, message):
        raise ConfigError(message)


def _cmd_run(args: argparse.Namespace) -> int:
    config = build_config(parse_items(Path(args.config).read_text()))
    return run_scenario(config, svg=True if args.svg else None)


def _cmd_sweep(args: argparse.Namespace) -> int:
    items = parse_items(Path(args.config).read_text())
    try:
        values = [float(tok) for tok in args.values.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"--values must be a comma-separated number list (got {args.values!r})")
    summary = sweep(items, args.axis, values)
    print(summary)
    return 0


def _cmd_accept(args: argparse.Namespace) -> int:
    if args.criteria:
        try:
            numbers = [int(tok) for tok in args.criteria.split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"--criteria must be a comma-separated integer list (got {args.criteria!r})")
        unknown = [n for n in numbers if n not in criterion_numbers()]
        if unknown:
            raise ConfigError(f"no such criteria: {unknown} (have 1..{max(criterion_numbers())})")
    else:
        numbers = criterion_numbers()
    failures = 0
    for number in numbers:
        result = run_criterion(number)
        tag = "PASS" if result.passed else "FAIL"
        print(f"{tag} criterion {result.number}: {result.name} - {result.detail}")
        if not result.passed:
            failures += 1
    return 0 if failures == 0 else 1


def _cmd_oracle(args: argparse.Namespace) -> int:
    if args.name == "heat":
        pairs = [(1.0 / n, heat_eigenmode_error(n, 1, 1.0, 0.1)) for n in (32, 64, 128)]
        for h, err in pairs:
            print(f"h={h:.6g} max_error={err:.6e}")
        order = refinement_order(pairs)
        print(f"observed_order={order:.4f}")
        return 0 if order >= 1.9 else 1
    if args.name == "ode":
        p = ModelParams(d1=1.0, d2=1.0, m1=1.0, m2=2.0, chi=1.0, a=1.0, b=1.0)
        traj = homogeneous_ode(1.0, 1.0, p, 50.0)
        ss = steady_states(p)
        u_end, v_end = float(traj.u[-1]), float(traj.v[-1])
        gap = max(abs(u_end - ss.u_star), abs(v_end - ss.v_star))
        print(f"endpoint u={u_end:.12f} v={v_end:.12f}")
        print(f"equilibrium u*={ss.u_star:.12f} v*={ss.v_star:.12f} gap={gap:.3e}")
        return 0 if gap <= 1e-6 else 1
    # name == "order": nonlinear refinement study against a fine reference
    items = scenario_items("order_1d")
    finals = {}
    for n in (32, 64, 128, 512):
        trial = dict(items)
        trial["grid.n"] = str(n)
        result = execute(build_config(trial))
        if not result.ok:
            print(f"n={n}: {result.status}", file=sys.stderr)
            return 2
        finals[n] = result.final_state.u.values
    pairs = []
    for n in (32, 64, 128):
        projected = finals[512].reshape(n, 512 // n).mean(axis=1)
        err = float(np.max(np.abs(finals[n] - projected)))
        pairs.append((2.0 / n, err))
        print(f"n={n} h={2.0 / n:.6g} max_error={err:.6e}")
    order = refinement_order(pairs)
    print(f"observed_order={order:.4f}")
    return 0 if order >= 1.9 else 1


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="preytaxis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one scenario file")
    p_run.add_argument("config", help="path to a key = value scenario file")
    p_run.add_argument("--svg", action="store_true", help="also write SVG line charts")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a scenario once per value of one key")
    p_sweep.add_argument("config", help="path to the base scenario file")
    p_sweep.add_argument("--axis", required=True, help="numeric config key to vary")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_accept = sub.add_parser("accept", help="run the acceptance checks")
    p_accept.add_argument("--criteria", default="", help="comma-separated subset (default: all)")
    p_accept.set_defaults(func=_cmd_accept)

    p_oracle = sub.add_parser("oracle", help="print an independent reference computation")
    p_oracle.add_argument("name", choices=("heat", "ode", "order"))
    p_oracle.set_defaults(func=_cmd_oracle)

    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except BlowUp as exc:
        print(f"blow-up: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
