"""Command-line front end: simulate, sweep, hedge, frame-check.

Exit codes: 0 on success, 1 on runtime errors (bad scenario files, missing
inputs), 2 on bad flags (argparse prints usage).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .game import GameConfig, grid, threshold_sweep
from .hedging import run_hedging
from .scenario_io import (
    load_scenario,
    render_dialogue_jsonl,
    render_frame_csv,
    render_frame_json,
    render_hedging_csv,
    render_hedging_json,
    render_report_csv,
    render_report_json,
    render_sweep_csv,
    render_sweep_json,
    run_scenario,
)
from .semantics import check_frame
from .worlds import pool_states


def _delta(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must be strictly between 0 and 1")
    return value


def _gamma(text: str) -> float:
    value = float(text)
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError("must be at least 0 and strictly below 1")
    return value


def _tau(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must be strictly between 0 and 1")
    return value


def _hedge_steps(text: str) -> int:
    value = int(text)
    if value < 4:
        raise argparse.ArgumentTypeError("must be at least 4")
    return value


def _grid_steps(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _tolerance(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default=default_format,
        help=f"report format (default: {default_format})",
    )


def _cmd_simulate(args: argparse.Namespace) -> int:
    report = run_scenario(load_scenario(args.scenario))
    text = render_report_json(report) if args.format == "json" else render_report_csv(report)
    _emit(text, args.out)
    if args.trace:
        Path(args.trace).write_text(render_dialogue_jsonl(report), encoding="utf-8")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    rows = threshold_sweep(grid(args.delta_steps), grid(args.gamma_steps), tau=args.tau)
    text = render_sweep_json(rows) if args.format == "json" else render_sweep_csv(rows)
    _emit(text, args.out)
    return 0


def _cmd_hedge(args: argparse.Namespace) -> int:
    config = GameConfig(delta=args.delta, gamma=args.gamma)
    trace = run_hedging(config, max_steps=args.steps, tolerance=args.tolerance)
    text = render_hedging_json(trace) if args.format == "json" else render_hedging_csv(trace)
    _emit(text, args.out)
    return 0


def _cmd_frame_check(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    frame = check_frame(pool_states(scenario.series))
    print(frame.summary())
    if args.out:
        text = render_frame_json(frame) if args.format == "json" else render_frame_csv(frame)
        _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hedgesim",
        description="Signalling-game simulator for coordination under vagueness.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="run a scenario file end to end")
    simulate.add_argument("scenario", help="path to a scenario file")
    _add_output_flags(simulate, default_format="json")
    simulate.add_argument(
        "--trace", metavar="PATH", help="also write the dialogue trace as JSON lines"
    )
    simulate.set_defaults(handler=_cmd_simulate)

    sweep = commands.add_parser("sweep", help="classify equilibria over a parameter grid")
    sweep.add_argument("--delta-steps", type=_grid_steps, required=True, metavar="K")
    sweep.add_argument("--gamma-steps", type=_grid_steps, required=True, metavar="K")
    sweep.add_argument("--tau", type=_tau, default=0.5, metavar="T")
    _add_output_flags(sweep, default_format="csv")
    sweep.set_defaults(handler=_cmd_sweep)

    hedge = commands.add_parser("hedge", help="trace the hedging recurrence and utilities")
    hedge.add_argument("--delta", type=_delta, required=True, metavar="D")
    hedge.add_argument("--gamma", type=_gamma, required=True, metavar="G")
    hedge.add_argument("--steps", type=_hedge_steps, required=True, metavar="N")
    hedge.add_argument("--tolerance", type=_tolerance, default=1e-6, metavar="TOL")
    _add_output_flags(hedge, default_format="csv")
    hedge.set_defaults(handler=_cmd_hedge)

    frame = commands.add_parser("frame-check", help="report a scenario model's frame properties")
    frame.add_argument("scenario", help="path to a scenario file")
    _add_output_flags(frame, default_format="json")
    frame.set_defaults(handler=_cmd_frame_check)

    return parser


def _describe(exc: BaseException) -> str:
    if isinstance(exc, KeyError) and exc.args:
        return str(exc.args[0])
    return str(exc)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {_describe(exc)}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
