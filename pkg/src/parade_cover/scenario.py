"""Scenario JSON documents.

Layout (all lengths in metres)::

    {
      "name": "city10",                         # optional
      "world": {"bounds": [[x0, y0], [x1, y1]],
                "obstacles": [[[x0, y0], [x1, y1]], ...]},
      "route": {"waypoints": [[x, y], ...]},
      "schedule": {"tail": [...], "head": [...]}
               | {"steps": K, "speed": v, "window": L, "start": s0},
      "sampling_period": 1.0,                   # optional, metadata only
      "points_per_instance": m,
      "team_size": S,
      "candidate_count": n,
      "seed": 0,
      "resample_mode": "fixed" | "per_iteration",
      "sensor": {"fov_deg": 175, "max_range": null,
                 "attenuation": "binary" | "linear_decay",
                 "heading_policy": "sweep" | "centroid"},
      "heuristic": {"alpha": 1, "tau": 1e-4, "bool_tol": 1e-4, "max_iters": 50}
    }

Unknown keys are rejected.  Loading errors come in three kinds:
``ScenarioNotFound`` (missing/unreadable file), ``ScenarioFormatError``
(not JSON, or wrong shapes) and ``ScenarioError`` (a value breaks an
invariant); each names the offending field.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .candidates import ResampleMode
from .coverage import SensorConfigError, SensorModel
from .geometry import Point2, Rect, World
from .heuristic import HeuristicConfig
from .route import ParadeSchedule, RoutePath
from .simulator import Scenario, ScenarioError

TOP_KEYS = {"name", "world", "route", "schedule", "sampling_period", "points_per_instance",
            "team_size", "candidate_count", "seed", "resample_mode", "sensor", "heuristic"}
REQUIRED = {"world", "route", "schedule", "points_per_instance", "team_size", "candidate_count"}
WORLD_KEYS = {"bounds", "obstacles"}
ROUTE_KEYS = {"waypoints"}
EXPLICIT_SCHEDULE = {"tail", "head"}
GENERATED_SCHEDULE = {"steps", "speed", "window", "start"}
SENSOR_KEYS = {"fov_deg", "max_range", "attenuation", "heading_policy"}
HEURISTIC_KEYS = {"alpha", "tau", "bool_tol", "max_iters"}

SHIPPED = Path(__file__).parent / "scenarios"


class ScenarioNotFound(FileNotFoundError):
    pass


class ScenarioFormatError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def shipped_scenario(name: str) -> Path:
    """Path of a scenario bundled with the package (``city10``, ``tiny``...)."""
    p = SHIPPED / (name if name.endswith(".json") else name + ".json")
    if not p.exists():
        raise ScenarioNotFound(f"no shipped scenario named {name!r}")
    return p


def _check_keys(obj: Any, allowed: set, where: str, required: set = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise ScenarioFormatError(where or "<root>", "expected an object")
    for key in obj:
        if key not in allowed:
            path = f"{where}.{key}" if where else key
            raise ScenarioFormatError(path, "unknown field")
    for key in required:
        if key not in obj:
            path = f"{where}.{key}" if where else key
            raise ScenarioFormatError(path, "missing required field")
    return obj


def _point(v, where: str) -> Point2:
    try:
        x, y = v
        return Point2(float(x), float(y))
    except (TypeError, ValueError) as exc:
        raise ScenarioFormatError(where, f"expected [x, y] with finite numbers ({exc})") from None


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioFormatError(where, f"expected an integer, got {v!r}")
    return v


def _rect(v, where: str) -> Rect:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ScenarioFormatError(where, "expected [[x0, y0], [x1, y1]]")
    lo, hi = _point(v[0], where + "[0]"), _point(v[1], where + "[1]")
    try:
        return Rect(lo, hi)
    except ValueError as exc:
        raise ScenarioError(where, str(exc)) from None


def scenario_from_dict(doc: dict) -> Scenario:
    _check_keys(doc, TOP_KEYS, "", REQUIRED)

    wd = _check_keys(doc["world"], WORLD_KEYS, "world", {"bounds"})
    bounds = _rect(wd["bounds"], "world.bounds")
    obstacles = [_rect(o, f"world.obstacles[{i}]") for i, o in enumerate(wd.get("obstacles", []))]
    try:
        world = World(bounds, tuple(obstacles))
    except ValueError as exc:
        raise ScenarioError("world.obstacles", str(exc)) from None

    rd = _check_keys(doc["route"], ROUTE_KEYS, "route", {"waypoints"})
    wps = [_point(p, f"route.waypoints[{i}]") for i, p in enumerate(rd["waypoints"])]
    try:
        path = RoutePath(tuple(wps))
    except ValueError as exc:
        raise ScenarioError("route.waypoints", str(exc)) from None

    m = _int(doc["points_per_instance"], "points_per_instance")
    period = doc.get("sampling_period")
    sd = doc["schedule"]
    if isinstance(sd, dict) and ("tail" in sd or "head" in sd):
        _check_keys(sd, EXPLICIT_SCHEDULE, "schedule", EXPLICIT_SCHEDULE)
        make = lambda: ParadeSchedule(tuple(sd["tail"]), tuple(sd["head"]), m, period)  # noqa: E731
    else:
        _check_keys(sd, GENERATED_SCHEDULE, "schedule", {"steps", "speed", "window"})
        make = lambda: ParadeSchedule.constant_speed(  # noqa: E731
            _int(sd["steps"], "schedule.steps"), float(sd["speed"]), float(sd["window"]),
            path.total_length, m, float(sd.get("start", 0.0)), period)
    try:
        schedule = make()
    except (ValueError, TypeError) as exc:
        field = "points_per_instance" if "points_per_instance" in str(exc) else "schedule"
        raise ScenarioError(field, str(exc)) from None

    sens = _check_keys(doc.get("sensor", {}), SENSOR_KEYS, "sensor")
    try:
        sensor = SensorModel(**sens)
    except SensorConfigError as exc:
        raise ScenarioError("sensor", str(exc)) from None
    except ValueError as exc:  # bad enum value
        raise ScenarioError("sensor", str(exc)) from None

    heur = _check_keys(doc.get("heuristic", {}), HEURISTIC_KEYS, "heuristic")
    try:
        heuristic = HeuristicConfig(**heur)
    except ValueError as exc:
        raise ScenarioError("heuristic", str(exc)) from None

    try:
        mode = ResampleMode(doc.get("resample_mode", "fixed"))
    except ValueError:
        raise ScenarioError("resample_mode", f"unknown mode {doc.get('resample_mode')!r}") from None

    return Scenario(
        world=world,
        path=path,
        schedule=schedule,
        team_size=_int(doc["team_size"], "team_size"),
        sensor=sensor,
        candidate_count=_int(doc["candidate_count"], "candidate_count"),
        seed=_int(doc.get("seed", 0), "seed"),
        resample_mode=mode,
        heuristic=heuristic,
        name=str(doc.get("name", "")),
    )


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ScenarioNotFound(f"scenario file not found: {path}") from None
    except OSError as exc:
        raise ScenarioNotFound(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError("<document>", f"malformed JSON: {exc}") from None
    return scenario_from_dict(doc)


def _pt(p: Point2) -> list[float]:
    return [p.x, p.y]


def _rc(r: Rect) -> list[list[float]]:
    return [_pt(r.min_corner), _pt(r.max_corner)]


def scenario_to_dict(s: Scenario) -> dict:
    """Canonical document; schedules are always written out explicitly."""
    doc = {
        "world": {"bounds": _rc(s.world.bounds), "obstacles": [_rc(o) for o in s.world.obstacles]},
        "route": {"waypoints": [_pt(p) for p in s.path.waypoints]},
        "schedule": {"tail": list(s.schedule.tail_arclength), "head": list(s.schedule.head_arclength)},
        "points_per_instance": s.schedule.points_per_instance,
        "team_size": s.team_size,
        "candidate_count": s.candidate_count,
        "seed": s.seed,
        "resample_mode": s.resample_mode.value,
        "sensor": {
            "fov_deg": s.sensor.fov_deg,
            "max_range": s.sensor.max_range,
            "attenuation": s.sensor.attenuation.value,
            "heading_policy": s.sensor.heading_policy.value,
        },
        "heuristic": {
            "alpha": s.heuristic.alpha,
            "tau": s.heuristic.tau,
            "bool_tol": s.heuristic.bool_tol,
            "max_iters": s.heuristic.max_iters,
        },
    }
    if s.name:
        doc["name"] = s.name
    if s.schedule.sampling_period is not None:
        doc["sampling_period"] = s.schedule.sampling_period
    return doc


def dump_scenario(s: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(s), indent=2) + "\n")
