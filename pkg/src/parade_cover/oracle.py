"""Exhaustive max-min placement for small instances."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .coverage import CoverageMatrix

DEFAULT_LIMIT = 2_000_000


class OracleRefused(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    best_subset: tuple[int, ...]
    best_value: float
    subsets_evaluated: int


def brute_force(A, S: int, limit: int = DEFAULT_LIMIT, chunk: int = 65536) -> OracleResult:
    """Enumerate every S-subset in lexicographic order and keep the first best."""
    A = A.entries if isinstance(A, CoverageMatrix) else np.asarray(A, dtype=float)
    n = A.shape[1]
    if not (1 <= S <= n):
        raise ValueError(f"need 1 <= S <= n, got S={S}, n={n}")
    total = math.comb(n, S)
    if total > limit:
        raise OracleRefused(f"C({n}, {S}) = {total} subsets exceeds the limit of {limit}")

    best_val = -math.inf
    best = None
    seen = 0
    combos = itertools.combinations(range(n), S)
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.intp)
        if block.size == 0:
            break
        # (subsets, m) coverage sums
        cov = A[:, block].sum(axis=2).T
        vals = cov.min(axis=1)
        i = int(np.argmax(vals))  # first maximiser within the block
        if vals[i] > best_val:
            best_val = float(vals[i])
            best = tuple(int(v) for v in block[i])
        seen += len(block)
    return OracleResult(best, best_val, seen)
