"""Seeded rejection sampling of candidate guard positions in free space."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .geometry import Point2, World, free_mask

MAX_CONSECUTIVE_REJECTIONS = 10_000
_BATCH = 4096


class FreeSpaceTooSmall(RuntimeError):
    pass


class ResampleMode(str, enum.Enum):
    FIXED = "fixed"
    PER_ITERATION = "per_iteration"


@dataclass(frozen=True)
class CandidateSet:
    positions: np.ndarray  # (n, 2), read-only
    seed: int
    resample_mode: ResampleMode = ResampleMode.FIXED

    @property
    def n(self) -> int:
        return len(self.positions)

    def points(self) -> list[Point2]:
        return [Point2(float(x), float(y)) for x, y in self.positions]


def sample_candidates(w: World, n: int, seed: int,
                      resample_mode: ResampleMode = ResampleMode.FIXED) -> CandidateSet:
    """Draw ``n`` i.i.d. uniform points from the free region of ``w``.

    Draws come from a PCG64 stream seeded with ``seed``; each draw is an (x, y)
    pair scaled into the bounding rectangle and kept only if it lands in free
    space.  The stream is consumed in order, so the output does not depend on
    the internal batch size.
    """
    if n < 1:
        raise ValueError("need at least one candidate")
    if not (0 <= seed < 2**64):
        raise ValueError("seed must be an unsigned 64-bit integer")
    rng = np.random.Generator(np.random.PCG64(seed))
    b = w.bounds
    lo = np.array([b.min_corner.x, b.min_corner.y])
    span = np.array([b.width, b.height])

    out = np.empty((n, 2))
    filled = 0
    streak = 0
    while filled < n:
        draws = lo + rng.random((_BATCH, 2)) * span
        ok = free_mask(w, draws)
        for i in range(_BATCH):
            if ok[i]:
                out[filled] = draws[i]
                filled += 1
                streak = 0
                if filled == n:
                    break
            else:
                streak += 1
                if streak >= MAX_CONSECUTIVE_REJECTIONS:
                    raise FreeSpaceTooSmall(
                        f"free space too small: {streak} consecutive rejections"
                    )
    out.setflags(write=False)
    return CandidateSet(out, seed, ResampleMode(resample_mode))
