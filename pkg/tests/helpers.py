"""Shared generators and brute-force oracles for the test suite."""

import math

import numpy as np

from parade_cover.geometry import Point2, Rect, World, point_in_free_space

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def random_world(rng, size=100.0, n_obstacles=(3, 9), side=(5.0, 25.0)) -> World:
    obs = []
    for _ in range(int(rng.integers(*n_obstacles))):
        x, y = rng.uniform(0, size - side[0], 2)
        w, h = rng.uniform(*side, 2)
        obs.append(Rect.from_coords(x, y, min(x + w, size), min(y + h, size)))
    return World(Rect.from_coords(0, 0, size, size), tuple(obs))


def random_free_point(rng, world: World) -> Point2:
    b = world.bounds
    while True:
        p = Point2(float(rng.uniform(b.min_corner.x, b.max_corner.x)),
                   float(rng.uniform(b.min_corner.y, b.max_corner.y)))
        if point_in_free_space(world, p):
            return p


def brute_heading_count(angles, fov, headings=3600, tol=1e-9):
    """Best count over uniformly spaced headings (independent of the sweep)."""
    angles = np.asarray(angles, dtype=float)
    if angles.size == 0:
        return 0
    h = -math.pi + 2 * math.pi * np.arange(headings) / headings
    off = np.abs((angles[None, :] - h[:, None] + math.pi) % (2 * math.pi) - math.pi)
    return int((off <= fov / 2 + tol).sum(axis=1).max())


def dense_blocked(world: World, a: Point2, b: Point2, samples=1000, tol=1e-9) -> bool:
    """Sample the segment at uniform parameters; blocked if any sample is strictly inside."""
    t = np.linspace(0.0, 1.0, samples)
    x = a.x + t * (b.x - a.x)
    y = a.y + t * (b.y - a.y)
    for ob in world.obstacles:
        inside = ((x > ob.min_corner.x + tol) & (x < ob.max_corner.x - tol)
                  & (y > ob.min_corner.y + tol) & (y < ob.max_corner.y - tol))
        if inside.any():
            return True
    return False


def _point_segment_distance(p, a, b):
    ab = np.subtract(b, a)
    denom = float(ab @ ab)
    t = 0.0 if denom == 0 else min(1.0, max(0.0, float(np.subtract(p, a) @ ab) / denom))
    q = np.add(a, t * ab)
    return math.hypot(p[0] - q[0], p[1] - q[1])


def near_tangent(world: World, a: Point2, b: Point2, rel=1e-3) -> bool:
    """True when a 1000-point sampling cannot resolve the segment against some obstacle.

    That happens when the segment passes within ``rel * length`` of an
    obstacle corner (a chord through the interior near a corner is then
    shorter than the sample spacing) or runs along an obstacle edge line.
    """
    length = math.hypot(b.x - a.x, b.y - a.y)
    delta = rel * length
    for ob in world.obstacles:
        for c in ob.corners():
            if _point_segment_distance(c.as_tuple(), a.as_tuple(), b.as_tuple()) <= delta:
                return True
        if a.x == b.x and a.x in (ob.min_corner.x, ob.max_corner.x):
            return True
        if a.y == b.y and a.y in (ob.min_corner.y, ob.max_corner.y):
            return True
    return False


def shapely_blocked(world: World, a: Point2, b: Point2) -> bool:
    """Exact predicate: the segment interior meets an obstacle interior."""
    from shapely.geometry import LineString, box

    if a == b:
        return False
    seg = LineString([a.as_tuple(), b.as_tuple()])
    return any(seg.relate_pattern(box(*ob.as_array()), "T********") for ob in world.obstacles)


def random_coverage_instance(rng, m, n, fov_deg=175.0, size=100.0):
    """Binary coverage matrix from a random city-like world.

    Random blocks, a five-leg route through free space with unobstructed
    legs, the whole route discretised into m points, n sampled candidates,
    sweep heading.
    """
    from parade_cover.candidates import sample_candidates
    from parade_cover.coverage import SensorModel, build_coverage_matrix
    from parade_cover.geometry import distance, segment_blocked
    from parade_cover.route import ParadeSchedule, RoutePath, route_instance

    world = random_world(rng, size, (4, 10), (5.0, 25.0))
    wps = []
    while len(wps) < 5:
        p = random_free_point(rng, world)
        if not wps or (distance(p, wps[-1]) > 1.0 and not segment_blocked(world, wps[-1], p)):
            wps.append(p)
    path = RoutePath(tuple(wps))
    inst = route_instance(path, ParadeSchedule((0.0,), (path.total_length,), m), 0)
    cands = sample_candidates(world, n, int(rng.integers(0, 2**32)))
    return build_coverage_matrix(world, cands, inst, SensorModel(fov_deg)).entries


def exact_heading_count(angles, fov, tol=1e-9):
    """Best count over critical headings: some optimal window has an edge on an input angle."""
    angles = np.asarray(angles, dtype=float)
    if angles.size == 0:
        return 0
    if fov >= 2 * math.pi:
        return angles.size
    h = np.concatenate([angles + fov / 2, angles - fov / 2])
    off = np.abs((angles[None, :] - h[:, None] + math.pi) % (2 * math.pi) - math.pi)
    return int((off <= fov / 2 + tol).sum(axis=1).max())
