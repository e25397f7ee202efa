"""Coverage matrix construction: occlusion, range and camera field of view.

A guard covers a route point when the sight line is unobstructed, the point
is within range, and it falls inside the camera's angular window.  The camera
heading is a free choice per guard (the platform can yaw); ``sweep`` picks the
heading that sees the most visible route points, ``centroid`` just looks at
the mean of the route points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .candidates import CandidateSet
from .geometry import Point2, World, blocked_matrix, distance, segment_blocked
from .route import RouteInstance

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-9


class Attenuation(str, enum.Enum):
    BINARY = "binary"
    LINEAR_DECAY = "linear_decay"


class HeadingPolicy(str, enum.Enum):
    SWEEP = "sweep"
    CENTROID = "centroid"


class SensorConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SensorModel:
    fov_deg: float = 175.0
    max_range: float | None = None
    attenuation: Attenuation = Attenuation.BINARY
    heading_policy: HeadingPolicy = HeadingPolicy.SWEEP

    def __post_init__(self):
        object.__setattr__(self, "attenuation", Attenuation(self.attenuation))
        object.__setattr__(self, "heading_policy", HeadingPolicy(self.heading_policy))
        if not (0.0 < self.fov_deg <= 360.0):
            raise SensorConfigError(f"fov must be in (0, 360] degrees, got {self.fov_deg}")
        if self.max_range is not None and not self.max_range > 0:
            raise SensorConfigError(f"max_range must be positive, got {self.max_range}")
        if self.attenuation is Attenuation.LINEAR_DECAY and self.max_range is None:
            raise SensorConfigError("linear_decay attenuation requires a bounded max_range")

    @property
    def fov(self) -> float:
        return math.radians(self.fov_deg)


@dataclass(frozen=True)
class CoverageMatrix:
    entries: np.ndarray  # (m, n)
    step_index: int = 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def column(self, i: int) -> np.ndarray:
        return self.entries[:, i]


def wrap_angle(a):
    """Map angles into [-pi, pi)."""
    return (np.asarray(a) + math.pi) % TWO_PI - math.pi


def visible(w: World, guard: Point2, target: Point2, model: SensorModel) -> bool:
    if model.max_range is not None and distance(guard, target) > model.max_range:
        return False
    return not segment_blocked(w, guard, target)


def best_heading(angles: Sequence[float], fov: float) -> tuple[float, int]:
    """Heading whose centred window of width ``fov`` holds the most angles.

    Every maximal window can be slid so that its left edge sits on one of the
    input angles; for each such anchor the covered run is centred and the
    smallest resulting heading wins ties.
    """
    a = np.asarray(angles, dtype=float)
    if a.size == 0:
        return 0.0, 0
    heading, count = _sweep(a[None, :], np.ones((1, a.size), dtype=bool), fov)
    return float(heading[0]), int(count[0])


def _sweep(angles: np.ndarray, mask: np.ndarray, fov: float) -> tuple[np.ndarray, np.ndarray]:
    """Batched circular sweep.

    ``angles`` and ``mask`` are (G, M); only masked angles take part.  Returns
    per-row heading and the number of masked angles in the best window.
    """
    diff = (angles[:, None, :] - angles[:, :, None]) % TWO_PI  # [g, anchor, other]
    inside = (diff <= fov + ANGLE_TOL) & mask[:, None, :] & mask[:, :, None]
    counts = inside.sum(axis=2)
    span = np.where(inside, diff, 0.0).max(axis=2)
    headings = wrap_angle(angles + span / 2.0)
    best = counts.max(axis=1)
    # smallest heading among anchors reaching the best count
    cand = np.where((counts == best[:, None]) & mask, headings, np.inf)
    heading = cand.min(axis=1)
    heading = np.where(np.isfinite(heading), heading, 0.0)
    return heading, best


def _in_window(angles: np.ndarray, heading: np.ndarray, fov: float) -> np.ndarray:
    off = np.abs(wrap_angle(angles - heading[:, None]))
    return off <= fov / 2.0 + ANGLE_TOL


def _visibility(w: World, guards: np.ndarray, targets: np.ndarray, model: SensorModel):
    """Visibility mask, distances and bearings, each (G, M)."""
    delta = targets[None, :, :] - guards[:, None, :]
    dist = np.hypot(delta[..., 0], delta[..., 1])
    # coincident guard/target: bearing defined as 0
    bearing = np.where(dist > 0, np.arctan2(delta[..., 1], delta[..., 0]), 0.0)
    vis = ~blocked_matrix(w.obstacle_array(), guards[:, None, :], targets[None, :, :])
    if model.max_range is not None:
        vis &= dist <= model.max_range
    return vis, dist, bearing


def coverage_block(w: World, guards: np.ndarray, targets: np.ndarray,
                   model: SensorModel) -> tuple[np.ndarray, np.ndarray]:
    """Coverage of ``targets`` (M, 2) by each of ``guards`` (G, 2).

    Returns ``(values, headings)`` with values of shape (G, M).
    """
    guards = np.asarray(guards, dtype=float).reshape(-1, 2)
    targets = np.asarray(targets, dtype=float).reshape(-1, 2)
    vis, dist, bearing = _visibility(w, guards, targets, model)
    fov = model.fov
    if model.heading_policy is HeadingPolicy.SWEEP:
        heading, _ = _sweep(bearing, vis, fov)
    else:
        centre = targets.mean(axis=0)
        d = centre[None, :] - guards
        heading = np.where(np.hypot(d[:, 0], d[:, 1]) > 0, np.arctan2(d[:, 1], d[:, 0]), 0.0)
    covered = vis & _in_window(bearing, heading, fov)
    if model.attenuation is Attenuation.BINARY:
        values = covered.astype(float)
    else:
        values = np.where(covered, np.maximum(0.0, 1.0 - dist / model.max_range), 0.0)
    return values, heading


def coverage_column(w: World, guard: Point2, inst: RouteInstance, model: SensorModel) -> np.ndarray:
    values, _ = coverage_block(w, np.array([guard.as_tuple()]), inst.as_array(), model)
    return values[0]


def build_coverage_matrix(w: World, cands: CandidateSet, inst: RouteInstance,
                          model: SensorModel, chunk: int = 512) -> CoverageMatrix:
    targets = inst.as_array()
    cols = []
    for start in range(0, cands.n, chunk):
        values, _ = coverage_block(w, cands.positions[start:start + chunk], targets, model)
        cols.append(values)
    entries = np.concatenate(cols, axis=0).T.copy() if cols else np.zeros((inst.m, 0))
    return CoverageMatrix(entries, inst.step_index)
