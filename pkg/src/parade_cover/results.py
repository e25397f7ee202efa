"""JSON Lines result streams: a header, one record per step, a footer."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .simulator import RunResult, StepRecord

TIMING_FIELDS = {"solve_seconds", "mean_solve_seconds", "max_solve_seconds"}


def _xy(points) -> list[list[float]]:
    return [[p.x, p.y] for p in points]


def record_to_dict(rec: StepRecord) -> dict:
    return {
        "type": "step",
        "step": rec.step_index,
        "selected_indices": rec.selected_indices,
        "selected_positions": _xy(rec.selected_positions),
        "robot_positions": _xy(rec.robot_positions),
        "robot_to_target": rec.robot_to_target,
        "move_distance": rec.move_distance,
        "t_boolean": rec.t_boolean,
        "min_coverage_point_index": rec.min_coverage_point_index,
        "iterations": rec.iterations,
        "converged": rec.converged,
        "rounded": rec.rounded,
        "solve_seconds": rec.solve_seconds,
        "point_coverage": rec.point_coverage,
        "coverage_histogram": {repr(k): v for k, v in rec.coverage_histogram.items()},
    }


def result_lines(result: RunResult, scenario_name: str = "") -> list[str]:
    # json emits the shortest repr that round-trips a double (up to 17 digits)
    header = {"type": "header", "digest": result.digest, "steps": len(result.records)}
    if scenario_name:
        header["scenario"] = scenario_name
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(record_to_dict(r), sort_keys=True) for r in result.records]
    lines.append(json.dumps({"type": "footer", **result.totals()}, sort_keys=True))
    return lines


def write_results(result: RunResult, path, scenario_name: str = "") -> None:
    Path(path).write_text("\n".join(result_lines(result, scenario_name)) + "\n")


def read_results(path) -> list[dict]:
    return [json.loads(line) for line in Path(path).read_text().splitlines() if line.strip()]


def strip_timing(records: Iterable[dict]) -> list[dict]:
    """Drop wall-clock fields so two runs can be compared for equality."""
    return [{k: v for k, v in r.items() if k not in TIMING_FIELDS} for r in records]
