"""Max-min coverage placement of a camera-equipped robot team over a moving parade route."""

from .assignment import Assignment, TeamState, nearest_neighbor_assign
from .candidates import CandidateSet, FreeSpaceTooSmall, ResampleMode, sample_candidates
from .coverage import (Attenuation, CoverageMatrix, HeadingPolicy, SensorModel, best_heading,
                       build_coverage_matrix, coverage_column, visible)
from .geometry import Point2, Rect, World, distance, point_in_free_space, segment_blocked
from .heuristic import (HeuristicConfig, InfeasiblePlacement, PlacementSolution,
                        cardinality_residual, recover_boolean)
from .lp import LPStatus, RelaxedProblem, RelaxedSolution, solve_relaxation
from .oracle import OracleRefused, OracleResult, brute_force
from .route import ParadeSchedule, RouteInstance, RoutePath, point_at_arclength, route_instance
from .scenario import load_scenario, scenario_from_dict, scenario_to_dict, shipped_scenario
from .simulator import RunResult, Scenario, ScenarioError, StepRecord, run

__version__ = "0.1.0"
