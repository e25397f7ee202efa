"""Command-line entry point: ``parade-cover run|oracle|bench``."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .candidates import FreeSpaceTooSmall
from .heuristic import recover_boolean
from .oracle import DEFAULT_LIMIT, OracleRefused, brute_force
from .coverage import build_coverage_matrix
from .render import render_frame
from .results import result_lines
from .route import route_instance
from .scenario import (ScenarioFormatError, ScenarioNotFound, load_scenario,
                       shipped_scenario)
from .simulator import ScenarioError, StepError, candidates_for_step, run

EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3

BENCH_COLUMNS = ["robots", "candidates", "step", "solve_seconds", "iterations", "t_boolean"]


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def resolve_scenario(arg: str):
    """Load a scenario file; bare names fall back to the bundled scenarios."""
    p = Path(arg)
    if not p.exists() and p.parent == Path("."):
        try:
            p = shipped_scenario(p.name)
        except ScenarioNotFound:
            pass
    return load_scenario(p)


def cmd_run(args) -> int:
    s = resolve_scenario(args.scenario)
    if args.seed is not None:
        s = s.with_overrides(seed=args.seed)
    result = run(s)
    lines = result_lines(result, s.name)
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    if args.frames:
        frames = Path(args.frames)
        frames.mkdir(parents=True, exist_ok=True)
        for rec in result.records:
            inst = route_instance(s.path, s.schedule, rec.step_index)
            (frames / f"frame_{rec.step_index:04d}.svg").write_text(render_frame(s, rec, inst))
    totals = result.totals()
    print(f"{s.name or args.scenario}: {totals['steps']} steps, min coverage {totals['min_t_boolean']:g}, "
          f"mean solve {totals['mean_solve_seconds']:.4f} s", file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    s = resolve_scenario(args.scenario)
    if not (0 <= args.step < s.steps):
        print(f"error: step {args.step} outside [0, {s.steps})", file=sys.stderr)
        return EXIT_ERROR
    cands = candidates_for_step(s, args.step)
    inst = route_instance(s.path, s.schedule, args.step)
    A = build_coverage_matrix(s.world, cands, inst, s.sensor)
    exact = brute_force(A, s.team_size, args.limit)
    heur = recover_boolean(A, s.team_size, s.heuristic)
    print("step\toracle_value\theuristic_value\toracle_subset\theuristic_subset\tsubsets_evaluated")
    print(f"{args.step}\t{exact.best_value:g}\t{heur.t_boolean:g}\t"
          f"{list(exact.best_subset)}\t{heur.selected}\t{exact.subsets_evaluated}")
    return 0


def bench_rows(s, robots: list[int], candidates: list[int]) -> list[dict]:
    rows = []
    for S in robots:
        for n in candidates:
            result = run(s.with_overrides(team_size=S, candidate_count=n))
            for rec in result.records:
                rows.append({
                    "robots": S, "candidates": n, "step": rec.step_index,
                    "solve_seconds": rec.solve_seconds, "iterations": rec.iterations,
                    "t_boolean": rec.t_boolean,
                })
    return rows


def cmd_bench(args) -> int:
    s = resolve_scenario(args.scenario)
    rows = bench_rows(s, args.robots, args.candidates)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parade-cover",
        description="Max-min camera coverage of a moving parade route by a robot team.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate every step of a scenario")
    p.add_argument("scenario")
    p.add_argument("--out", help="JSON Lines result file (default: stdout)")
    p.add_argument("--frames", help="directory for per-step SVG frames")
    p.add_argument("--seed", type=int, help="override the scenario seed")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("oracle", help="compare the heuristic with brute force on one step")
    p.add_argument("scenario")
    p.add_argument("--step", type=int, required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum subsets to enumerate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="per-step solve timings over team and candidate sizes")
    p.add_argument("scenario")
    p.add_argument("--robots", type=_int_list, default=[6, 12, 24])
    p.add_argument("--candidates", type=_int_list, default=[512, 1024, 2048, 4096])
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except OracleRefused as exc:
        print(f"oracle refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ScenarioNotFound, ScenarioFormatError, ScenarioError, StepError,
            FreeSpaceTooSmall, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
