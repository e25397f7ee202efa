"""Per-step planning loop: route window -> candidates -> coverage -> placement -> hand-off."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .assignment import TeamState, nearest_neighbor_assign
from .candidates import CandidateSet, ResampleMode, sample_candidates
from .coverage import SensorModel, build_coverage_matrix, coverage_block
from .geometry import Point2, World
from .heuristic import HeuristicConfig, PlacementSolution, recover_boolean
from .route import ParadeSchedule, RouteInstance, RoutePath, route_instance

RECORD_TOL = 1e-9


class ScenarioError(ValueError):
    """Invalid scenario; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class StepError(RuntimeError):
    def __init__(self, step: int, cause: Exception):
        super().__init__(f"step {step}: {cause}")
        self.step = step


@dataclass(frozen=True)
class Scenario:
    world: World
    path: RoutePath
    schedule: ParadeSchedule
    team_size: int
    sensor: SensorModel
    candidate_count: int
    seed: int = 0
    resample_mode: ResampleMode = ResampleMode.FIXED
    heuristic: HeuristicConfig = field(default_factory=HeuristicConfig)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "resample_mode", ResampleMode(self.resample_mode))
        if self.team_size < 1:
            raise ScenarioError("team_size", f"must be >= 1, got {self.team_size}")
        if self.candidate_count < 1:
            raise ScenarioError("candidate_count", f"must be >= 1, got {self.candidate_count}")
        if self.team_size > self.candidate_count:
            raise ScenarioError("team_size", f"{self.team_size} exceeds candidate_count {self.candidate_count}")
        if not (0 <= self.seed < 2**64):
            raise ScenarioError("seed", "must be an unsigned 64-bit integer")
        try:
            self.path.check_in_world(self.world)
        except ValueError as exc:
            raise ScenarioError("route.waypoints", str(exc)) from None
        try:
            self.schedule.check_against(self.path)
        except ValueError as exc:
            raise ScenarioError("schedule", str(exc)) from None

    def with_overrides(self, **kw) -> "Scenario":
        return replace(self, **kw)

    @property
    def steps(self) -> int:
        return self.schedule.step_count


@dataclass
class StepRecord:
    step_index: int
    selected_indices: list[int]
    selected_positions: list[Point2]
    robot_positions: list[Point2]
    robot_to_target: list[int]
    move_distance: float
    t_boolean: float
    min_coverage_point_index: int
    iterations: int
    converged: bool
    rounded: bool
    solve_seconds: float
    point_coverage: list[float]

    @property
    def coverage_histogram(self) -> dict[float, int]:
        """How many route points sit at each coverage level."""
        levels, counts = np.unique(self.point_coverage, return_counts=True)
        return {float(v): int(c) for v, c in zip(levels, counts)}


@dataclass
class RunResult:
    records: list[StepRecord]
    digest: str

    @property
    def mean_solve_seconds(self) -> float:
        return float(np.mean([r.solve_seconds for r in self.records]))

    @property
    def max_solve_seconds(self) -> float:
        return float(np.max([r.solve_seconds for r in self.records]))

    @property
    def mean_t_boolean(self) -> float:
        return float(np.mean([r.t_boolean for r in self.records]))

    def totals(self) -> dict:
        return {
            "steps": len(self.records),
            "mean_solve_seconds": self.mean_solve_seconds,
            "max_solve_seconds": self.max_solve_seconds,
            "mean_t_boolean": self.mean_t_boolean,
            "min_t_boolean": float(min(r.t_boolean for r in self.records)),
            "rounded_steps": sum(r.rounded for r in self.records),
        }


def scenario_digest(s: Scenario) -> str:
    from .scenario import scenario_to_dict

    blob = json.dumps(scenario_to_dict(s), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def candidates_for_step(s: Scenario, k: int, fixed: CandidateSet | None = None) -> CandidateSet:
    if s.resample_mode is ResampleMode.PER_ITERATION:
        return sample_candidates(s.world, s.candidate_count, (s.seed + k) % 2**64, s.resample_mode)
    if fixed is not None:
        return fixed
    return sample_candidates(s.world, s.candidate_count, s.seed, s.resample_mode)


def recompute_coverage(s: Scenario, guards: np.ndarray, inst: RouteInstance) -> np.ndarray:
    """Per-point additive coverage of a guard set, straight from geometry."""
    values, _ = coverage_block(s.world, guards, inst.as_array(), s.sensor)
    return values.sum(axis=0)


def solve_step(s: Scenario, k: int, cands: CandidateSet) -> tuple[RouteInstance, PlacementSolution, float]:
    inst = route_instance(s.path, s.schedule, k)
    A = build_coverage_matrix(s.world, cands, inst, s.sensor)
    t0 = time.perf_counter()
    sol = recover_boolean(A, s.team_size, s.heuristic)
    elapsed = time.perf_counter() - t0
    return inst, sol, elapsed


def run(s: Scenario) -> RunResult:
    fixed = None
    team: TeamState | None = None
    records = []
    for k in range(s.steps):
        try:
            cands = candidates_for_step(s, k, fixed)
            if s.resample_mode is ResampleMode.FIXED:
                fixed = cands
            inst, sol, elapsed = solve_step(s, k, cands)

            guards = cands.positions[sol.selected]
            cover = recompute_coverage(s, guards, inst)
            t_check = float(cover.min())
            if abs(t_check - sol.t_boolean) > RECORD_TOL:
                raise RuntimeError(
                    f"record check failed: heuristic t={sol.t_boolean}, geometry t={t_check}"
                )
            targets = [Point2(float(x), float(y)) for x, y in guards]
            if team is None:
                mapping = tuple(range(s.team_size))
                moved = 0.0
            else:
                a = nearest_neighbor_assign(team, targets)
                mapping, moved = a.robot_to_target, a.total_distance
            robots = [targets[j] for j in mapping]
            team = TeamState(tuple(robots), k)
        except Exception as exc:  # noqa: BLE001 - re-raised with step context
            raise StepError(k, exc) from exc

        records.append(StepRecord(
            step_index=k,
            selected_indices=list(sol.selected),
            selected_positions=targets,
            robot_positions=robots,
            robot_to_target=list(mapping),
            move_distance=moved,
            t_boolean=sol.t_boolean,
            min_coverage_point_index=int(np.argmin(cover)),
            iterations=sol.iterations,
            converged=sol.converged,
            rounded=sol.rounded,
            solve_seconds=elapsed,
            point_coverage=[float(v) for v in cover],
        ))
    return RunResult(records, scenario_digest(s))
