"""2D primitives, rectangular obstacles and line-of-sight tests.

Obstacles block sight only through their open interior: a segment that runs
along an edge or grazes a corner is unobstructed, and points on an obstacle
boundary count as free space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

# parameter-interval slack for the slab test; intervals shorter than this are
# treated as tangent contact
PARAM_EPS = 1e-12


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Rect:
    min_corner: Point2
    max_corner: Point2

    def __post_init__(self):
        if not (self.min_corner.x < self.max_corner.x and self.min_corner.y < self.max_corner.y):
            raise ValueError(
                f"degenerate rectangle {self.min_corner.as_tuple()}-{self.max_corner.as_tuple()}"
            )

    @classmethod
    def from_coords(cls, x0: float, y0: float, x1: float, y1: float) -> "Rect":
        return cls(Point2(x0, y0), Point2(x1, y1))

    @property
    def width(self) -> float:
        return self.max_corner.x - self.min_corner.x

    @property
    def height(self) -> float:
        return self.max_corner.y - self.min_corner.y

    @property
    def area(self) -> float:
        return self.width * self.height

    def as_array(self) -> np.ndarray:
        return np.array([self.min_corner.x, self.min_corner.y, self.max_corner.x, self.max_corner.y])

    def contains_closed(self, p: Point2) -> bool:
        return (self.min_corner.x <= p.x <= self.max_corner.x
                and self.min_corner.y <= p.y <= self.max_corner.y)

    def contains_open(self, p: Point2) -> bool:
        return (self.min_corner.x < p.x < self.max_corner.x
                and self.min_corner.y < p.y < self.max_corner.y)

    def corners(self) -> list[Point2]:
        x0, y0, x1, y1 = self.as_array()
        return [Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1)]


@dataclass(frozen=True)
class World:
    """Workspace bounds plus axis-aligned rectangular obstacles (union semantics)."""

    bounds: Rect
    obstacles: tuple[Rect, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        b = self.bounds
        for i, ob in enumerate(self.obstacles):
            if (ob.max_corner.x <= b.min_corner.x or ob.min_corner.x >= b.max_corner.x
                    or ob.max_corner.y <= b.min_corner.y or ob.min_corner.y >= b.max_corner.y):
                raise ValueError(f"obstacle {i} does not intersect the world bounds")
            if (ob.min_corner.x < b.min_corner.x and ob.max_corner.x > b.max_corner.x
                    and ob.min_corner.y < b.min_corner.y and ob.max_corner.y > b.max_corner.y):
                raise ValueError(f"obstacle {i} swallows the whole workspace")

    def obstacle_array(self) -> np.ndarray:
        """Obstacles as an (O, 4) array of [xmin, ymin, xmax, ymax]."""
        if not self.obstacles:
            return np.zeros((0, 4))
        return np.array([ob.as_array() for ob in self.obstacles])

    def without_obstacle(self, index: int) -> "World":
        obs = self.obstacles[:index] + self.obstacles[index + 1:]
        return World(self.bounds, obs)

    def with_obstacle(self, ob: Rect) -> "World":
        return World(self.bounds, self.obstacles + (ob,))


def _as_point(p) -> Point2:
    return p if isinstance(p, Point2) else Point2(float(p[0]), float(p[1]))


def distance(a: Point2, b: Point2) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def point_in_free_space(w: World, p: Point2) -> bool:
    p = _as_point(p)
    if not w.bounds.contains_closed(p):
        return False
    return not any(ob.contains_open(p) for ob in w.obstacles)


def free_mask(w: World, xy: np.ndarray) -> np.ndarray:
    """Vectorised point_in_free_space over an (N, 2) array."""
    xy = np.asarray(xy, dtype=float)
    x, y = xy[:, 0], xy[:, 1]
    b = w.bounds
    ok = (x >= b.min_corner.x) & (x <= b.max_corner.x) & (y >= b.min_corner.y) & (y <= b.max_corner.y)
    for ob in w.obstacles:
        inside = ((x > ob.min_corner.x) & (x < ob.max_corner.x)
                  & (y > ob.min_corner.y) & (y < ob.max_corner.y))
        ok &= ~inside
    return ok


def _open_interval(p0, d, lo, hi):
    """Parameter interval of t where lo < p0 + t*d < hi (open); returns (t_lo, t_hi)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ta = (lo - p0) / d
        tb = (hi - p0) / d
    t_lo = np.minimum(ta, tb)
    t_hi = np.maximum(ta, tb)
    # axis-parallel motion: the whole line is inside the slab or none of it is
    flat = d == 0
    inside = (p0 > lo) & (p0 < hi)
    t_lo = np.where(flat, np.where(inside, -np.inf, np.inf), t_lo)
    t_hi = np.where(flat, np.where(inside, np.inf, -np.inf), t_hi)
    return t_lo, t_hi


def blocked_matrix(obstacles: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcast segment/obstacle test.

    ``a`` and ``b`` are arrays of shape (..., 2) that broadcast against each
    other; ``obstacles`` is (O, 4).  Returns a boolean array of the broadcast
    shape, true where the open segment meets the open interior of any obstacle.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    shape = np.broadcast_shapes(a.shape, b.shape)[:-1]
    out = np.zeros(shape, dtype=bool)
    if len(obstacles) == 0:
        return out
    ax, ay = a[..., 0], a[..., 1]
    dx, dy = b[..., 0] - ax, b[..., 1] - ay
    for x0, y0, x1, y1 in obstacles:
        txl, txh = _open_interval(ax, dx, x0, x1)
        tyl, tyh = _open_interval(ay, dy, y0, y1)
        lo = np.maximum(np.maximum(txl, tyl), 0.0)
        hi = np.minimum(np.minimum(txh, tyh), 1.0)
        out |= (hi - lo) > PARAM_EPS
    return out


def segment_blocked(w: World, a: Point2, b: Point2) -> bool:
    a, b = _as_point(a), _as_point(b)
    return bool(blocked_matrix(w.obstacle_array(), np.array(a.as_tuple()), np.array(b.as_tuple())))


def polyline_length(points: Sequence[Point2]) -> float:
    return sum(distance(p, q) for p, q in zip(points, points[1:]))


def points_to_array(points: Iterable[Point2]) -> np.ndarray:
    arr = np.array([p.as_tuple() for p in points], dtype=float)
    return arr.reshape(-1, 2)


def array_to_points(arr: np.ndarray) -> list[Point2]:
    return [Point2(float(x), float(y)) for x, y in np.asarray(arr, dtype=float)]
