import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parade_cover.geometry import Point2, Rect, World
from parade_cover.route import (ParadeSchedule, RoutePath, make_path, point_at_arclength,
                                route_instance)

STRAIGHT = make_path([(0, 0), (10, 0)])
ELL = make_path([(0, 0), (10, 0), (10, 10)])


@pytest.mark.parametrize("path, s, expected", [
    (STRAIGHT, 0.0, (0, 0)),
    (STRAIGHT, 7.5, (7.5, 0)),
    (ELL, 15.0, (10, 5)),
    (ELL, 10.0, (10, 0)),
    (ELL, 20.0, (10, 10)),
])
def test_point_at_arclength(path, s, expected):
    assert point_at_arclength(path, s).as_tuple() == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("s", [-1e-9, 20.0001])
def test_point_at_arclength_out_of_range(s):
    with pytest.raises(IndexError):
        point_at_arclength(ELL, s)


def test_uniform_split():
    inst = route_instance(STRAIGHT, ParadeSchedule((0,), (10,), 3), 0)
    assert [p.as_tuple() for p in inst.points] == [(0, 0), (5, 0), (10, 0)]


def test_degenerate_window():
    inst = route_instance(STRAIGHT, ParadeSchedule((4,), (4,), 5), 0)
    assert inst.points == (point_at_arclength(STRAIGHT, 4.0),) * 5


def test_window_across_a_corner():
    inst = route_instance(ELL, ParadeSchedule((5,), (15,), 3), 0)
    expected = [point_at_arclength(ELL, s) for s in (5.0, 10.0, 15.0)]
    assert [p.as_tuple() for p in inst.points] == [(5, 0), (10, 0), (10, 5)]
    assert list(inst.points) == expected


def test_invalid_step():
    with pytest.raises(IndexError):
        route_instance(STRAIGHT, ParadeSchedule((0,), (10,), 3), 1)


def test_path_validation():
    with pytest.raises(ValueError):
        make_path([(0, 0)])
    with pytest.raises(ValueError, match="coincide"):
        make_path([(0, 0), (0, 0), (1, 0)])


def test_schedule_validation():
    with pytest.raises(ValueError):
        ParadeSchedule((2,), (1,), 3)
    with pytest.raises(ValueError):
        ParadeSchedule((0, 0), (5, 4), 3)
    with pytest.raises(ValueError):
        ParadeSchedule((0,), (1,), 0)


def test_constant_speed_schedule_clamps():
    sched = ParadeSchedule.constant_speed(5, speed=10, window=15, total_length=30,
                                          points_per_instance=4, start=5)
    assert sched.head_arclength == (5, 15, 25, 30, 30)
    assert sched.tail_arclength == (0, 0, 10, 15, 15)


def test_path_outside_world_rejected():
    w = World(Rect.from_coords(0, 0, 10, 10), (Rect.from_coords(2, 2, 4, 4),))
    with pytest.raises(ValueError, match="waypoint 1"):
        make_path([(0, 0), (3, 3)]).check_in_world(w)


waypoint = st.tuples(st.integers(-50, 50), st.integers(-50, 50))


@settings(max_examples=150, deadline=None)
@given(st.lists(waypoint, min_size=2, max_size=7, unique=True),
       st.floats(0, 1), st.floats(0, 1), st.integers(1, 30))
def test_instance_properties(wps, f0, f1, m):
    # consecutive duplicates are excluded by unique=True
    path = make_path(wps)
    L = path.total_length
    tail, head = sorted((f0 * L, f1 * L))
    sched = ParadeSchedule((tail,), (head,), m)
    inst = route_instance(path, sched, 0)
    assert len(inst.points) == m
    # each point is the prescribed arclength point
    for p, s in zip(inst.points, inst.arclengths):
        assert p == point_at_arclength(path, s)
    if m >= 2:
        # arclength spacing adds up to the window
        assert sum(np.diff(inst.arclengths)) == pytest.approx(head - tail, abs=1e-9)
        assert inst.arclengths[0] == tail and inst.arclengths[-1] == head
    # points lie on the polyline
    xy = np.array([w for w in wps], dtype=float)
    for p in inst.points:
        d = min(_seg_dist((p.x, p.y), xy[i], xy[i + 1]) for i in range(len(xy) - 1))
        assert d <= 1e-9
    assert route_instance(path, sched, 0) == inst


def _seg_dist(p, a, b):
    ab = b - a
    t = np.clip(np.dot(np.subtract(p, a), ab) / np.dot(ab, ab), 0, 1)
    return float(np.hypot(*(a + t * ab - p)))
