"""Boolean placement recovery by iterated reweighted l1 penalisation.

Starting from w = 0, repeatedly solve the relaxation with the linear penalty
``-w.x`` and reweight ``w_i = alpha / (tau + x_i)`` until the relaxed vector
is Boolean.  Entries that were small get large weights and are pushed to
zero in the next solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coverage import CoverageMatrix
from .lp import DEFAULT_TIEBREAK, LPStatus, RelaxedProblem, solve_relaxation


class InfeasiblePlacement(ValueError):
    pass


@dataclass(frozen=True)
class HeuristicConfig:
    alpha: float = 1.0
    tau: float = 1e-4
    bool_tol: float = 1e-4
    max_iters: int = 50
    tiebreak_eps: float = DEFAULT_TIEBREAK
    lp_method: str = "simplex"

    def __post_init__(self):
        for name in ("alpha", "tau", "bool_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.bool_tol < 0.5:
            raise ValueError("bool_tol must be below 0.5")
        if self.tiebreak_eps < 0:
            raise ValueError("tiebreak_eps must be nonnegative")


@dataclass
class PlacementSolution:
    selected: list[int]
    x: np.ndarray
    t_boolean: float
    iterations: int
    converged: bool
    rounded: bool
    relaxed_t: float = float("nan")  # t of the first (w = 0) relaxation
    residuals: list[float] = field(default_factory=list)
    stalled: bool = False  # reweighting reached a non-Boolean fixed point

    def boolean_vector(self, n: int) -> np.ndarray:
        v = np.zeros(n)
        v[self.selected] = 1.0
        return v


def cardinality_residual(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.minimum(x, 1.0 - x).sum())


def reweight(x: np.ndarray, alpha: float, tau: float) -> np.ndarray:
    return alpha / (tau + np.clip(x, 0.0, None))


def top_s(x: np.ndarray, S: int) -> list[int]:
    """Indices of the S largest entries; lower index wins ties."""
    order = np.lexsort((np.arange(len(x)), -x))
    return sorted(int(i) for i in order[:S])


def recover_boolean(A, S: int, cfg: HeuristicConfig | None = None) -> PlacementSolution:
    cfg = cfg or HeuristicConfig()
    A = A.entries if isinstance(A, CoverageMatrix) else np.asarray(A, dtype=float)
    n = A.shape[1]
    if not (1 <= S <= n):
        raise InfeasiblePlacement(f"cannot place {S} robots on {n} candidate positions")

    w = np.zeros(n)
    x = None
    relaxed_t = float("nan")
    residuals = []
    converged = False
    stalled = False
    prev = None
    warm = None
    it = 0
    for it in range(1, cfg.max_iters + 1):
        # the total-coverage tiebreak only applies to the unweighted first solve
        eps = cfg.tiebreak_eps if not w.any() else 0.0
        sol = solve_relaxation(RelaxedProblem(A, S, w, eps), method=cfg.lp_method, warm=warm)
        if sol.status is not LPStatus.OPTIMAL:
            raise InfeasiblePlacement(f"relaxation returned {sol.status.value}")
        x = sol.x
        warm = sol.basis
        if it == 1:
            relaxed_t = sol.t
        residuals.append(cardinality_residual(x))
        if np.all(np.minimum(x, 1.0 - x) <= cfg.bool_tol):
            converged = True
            break
        if prev is not None and np.array_equal(x, prev):
            # same weights next time round means the same LP and the same x:
            # a fixed point, so go straight to the fallback
            stalled = True
            break
        prev = x
        w = reweight(x, cfg.alpha, cfg.tau)

    if converged:
        selected = [int(i) for i in np.flatnonzero(x > 0.5)]
        if len(selected) != S:
            # only reachable through a numerically broken LP answer
            selected = top_s(x, S)
    else:
        selected = top_s(x, S)
    xb = np.zeros(n)
    xb[selected] = 1.0
    t_bool = float(np.min(A @ xb))
    return PlacementSolution(selected, x, t_bool, it, converged, not converged,
                             relaxed_t, residuals, stalled)
