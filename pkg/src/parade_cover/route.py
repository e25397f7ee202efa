"""Piecewise-linear parade route and its per-step discretisation.

The parade occupies a sliding arclength window ``[tail(k), head(k)]`` of a
fixed polyline.  Each step turns that window into ``m`` points at uniform
arclength spacing, endpoints included.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import Point2, World, point_in_free_space, points_to_array


@dataclass(frozen=True)
class RoutePath:
    waypoints: tuple[Point2, ...]
    cumulative_arclength: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        wps = tuple(self.waypoints)
        object.__setattr__(self, "waypoints", wps)
        if len(wps) < 2:
            raise ValueError("a route needs at least two waypoints")
        xy = points_to_array(wps)
        seg = np.hypot(*np.diff(xy, axis=0).T)
        if np.any(seg == 0):
            i = int(np.flatnonzero(seg == 0)[0])
            raise ValueError(f"waypoints {i} and {i + 1} coincide")
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        cum.setflags(write=False)
        object.__setattr__(self, "cumulative_arclength", cum)
        object.__setattr__(self, "_xy", xy)

    @property
    def total_length(self) -> float:
        return float(self.cumulative_arclength[-1])

    def check_in_world(self, w: World) -> None:
        for i, p in enumerate(self.waypoints):
            if not point_in_free_space(w, p):
                raise ValueError(f"waypoint {i} {p.as_tuple()} is not in free space")

    def positions(self, s: np.ndarray) -> np.ndarray:
        """Vectorised arclength -> (x, y); ``s`` must already be in range."""
        s = np.asarray(s, dtype=float)
        cum = self.cumulative_arclength
        seg = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(cum) - 2)
        start = self._xy[seg]
        end = self._xy[seg + 1]
        frac = (s - cum[seg]) / (cum[seg + 1] - cum[seg])
        out = start + frac[..., None] * (end - start)
        # land exactly on vertices when s hits a cumulative breakpoint
        hit_end = s == cum[seg + 1]
        out[hit_end] = end[hit_end]
        return out


def point_at_arclength(path: RoutePath, s: float) -> Point2:
    if not (0.0 <= s <= path.total_length):
        raise IndexError(f"arclength {s} outside [0, {path.total_length}]")
    x, y = path.positions(np.array([s]))[0]
    return Point2(float(x), float(y))


@dataclass(frozen=True)
class ParadeSchedule:
    tail_arclength: tuple[float, ...]
    head_arclength: tuple[float, ...]
    points_per_instance: int
    sampling_period: float | None = None  # metadata only; nothing depends on it

    def __post_init__(self):
        object.__setattr__(self, "tail_arclength", tuple(float(v) for v in self.tail_arclength))
        object.__setattr__(self, "head_arclength", tuple(float(v) for v in self.head_arclength))
        if len(self.tail_arclength) != len(self.head_arclength):
            raise ValueError("tail and head arrays differ in length")
        if not self.tail_arclength:
            raise ValueError("schedule needs at least one step")
        if self.points_per_instance < 1:
            raise ValueError("points_per_instance must be >= 1")
        for k, (t, h) in enumerate(zip(self.tail_arclength, self.head_arclength)):
            if not (0.0 <= t <= h):
                raise ValueError(f"step {k}: need 0 <= tail <= head, got [{t}, {h}]")
        if np.any(np.diff(self.tail_arclength) < 0) or np.any(np.diff(self.head_arclength) < 0):
            raise ValueError("tail and head must be nondecreasing in k")

    @property
    def step_count(self) -> int:
        return len(self.tail_arclength)

    def check_against(self, path: RoutePath) -> None:
        if max(self.head_arclength) > path.total_length + 1e-9:
            raise ValueError(
                f"head arclength {max(self.head_arclength)} exceeds route length {path.total_length}"
            )

    @classmethod
    def constant_speed(cls, steps: int, speed: float, window: float, total_length: float,
                       points_per_instance: int, start: float = 0.0,
                       sampling_period: float | None = None) -> "ParadeSchedule":
        """Head advances by ``speed`` per step from ``start``; tail trails by ``window``.

        Both ends are clamped to the route.
        """
        k = np.arange(steps, dtype=float)
        head = np.minimum(start + speed * k, total_length)
        tail = np.maximum(head - window, 0.0)
        return cls(tuple(tail), tuple(head), points_per_instance, sampling_period)


@dataclass(frozen=True)
class RouteInstance:
    step_index: int
    points: tuple[Point2, ...]
    arclengths: tuple[float, ...] = ()

    def as_array(self) -> np.ndarray:
        return points_to_array(self.points)

    @property
    def m(self) -> int:
        return len(self.points)


def instance_arclengths(sched: ParadeSchedule, k: int) -> np.ndarray:
    if not (0 <= k < sched.step_count):
        raise IndexError(f"step {k} outside [0, {sched.step_count})")
    tail, head = sched.tail_arclength[k], sched.head_arclength[k]
    s = np.linspace(tail, head, sched.points_per_instance)
    if sched.points_per_instance >= 2:
        s[-1] = head
    return s


def route_instance(path: RoutePath, sched: ParadeSchedule, k: int) -> RouteInstance:
    s = instance_arclengths(sched, k)
    if s[-1] > path.total_length:
        raise IndexError(f"step {k}: head {s[-1]} beyond route length {path.total_length}")
    xy = path.positions(s)
    pts = tuple(Point2(float(x), float(y)) for x, y in xy)
    return RouteInstance(k, pts, tuple(float(v) for v in s))


def make_path(waypoints: Sequence) -> RoutePath:
    return RoutePath(tuple(p if isinstance(p, Point2) else Point2(*map(float, p)) for p in waypoints))
