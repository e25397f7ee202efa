"""Greedy nearest-neighbour hand-off of new guard positions to robots.

Distances are straight-line; obstacles are ignored, so a robot's move between
steps may cut through a building.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import Point2, points_to_array


@dataclass(frozen=True)
class TeamState:
    robot_positions: tuple[Point2, ...]
    step_index: int = 0


@dataclass(frozen=True)
class Assignment:
    robot_to_target: tuple[int, ...]
    total_distance: float


def nearest_neighbor_assign(current: TeamState, targets: Sequence[Point2]) -> Assignment:
    """Repeatedly match the closest unmatched (robot, target) pair.

    Ties go to the lower robot index, then the lower target index.
    """
    robots = points_to_array(current.robot_positions)
    goals = points_to_array(targets)
    S = len(robots)
    if len(goals) != S:
        raise ValueError(f"{S} robots but {len(goals)} targets")
    dist = np.hypot(*(robots[:, None, :] - goals[None, :, :]).transpose(2, 0, 1))
    work = dist.copy()
    mapping = [-1] * S
    total = 0.0
    for _ in range(S):
        # argmin over the flattened matrix is row-major: lowest robot, then target
        r, t = divmod(int(np.argmin(work)), S)
        mapping[r] = t
        total += float(dist[r, t])
        work[r, :] = np.inf
        work[:, t] = np.inf
    return Assignment(tuple(mapping), total)
