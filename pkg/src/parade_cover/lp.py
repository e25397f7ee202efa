"""Continuous relaxation of the max-min placement program.

    maximise    t - w.x + eps * 1'A x
    subject to  t <= (A x)_j      for every route point j
                0 <= x <= 1,  1'x = S

The default solver is a dense bounded-variable primal simplex (below).  It
starts from a feasible basis built from an arbitrary S-subset, so no phase 1
is needed, and returns a basic (vertex) optimum.  HiGHS dual simplex is
available as ``method="highs"`` for cross-checking and large instances.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg.blas import dger

MAX_ENTRY = 1e12
DEFAULT_TIEBREAK = 1e-6
PIVOT_TOL = 1e-9
COST_TOL = 1e-9
# consecutive degenerate pivots before switching to Bland's rule
DEGENERATE_STALL = 25
REFACTOR_EVERY = 200


class LPStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded-guard"


class LPInputError(ValueError):
    pass


@dataclass
class RelaxedProblem:
    A: np.ndarray
    S: int
    w: np.ndarray | None = None
    tiebreak_eps: float = 0.0

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        if self.A.ndim != 2 or self.A.shape[0] < 1 or self.A.shape[1] < 1:
            raise LPInputError(f"coverage matrix must be 2-D and nonempty, got shape {self.A.shape}")
        if not np.all(np.isfinite(self.A)):
            raise LPInputError("coverage matrix has non-finite entries")
        if np.any(self.A < 0):
            raise LPInputError("coverage matrix has negative entries")
        if np.any(self.A > MAX_ENTRY):
            raise LPInputError(f"coverage entries above {MAX_ENTRY:g} are not supported")
        n = self.A.shape[1]
        self.w = np.zeros(n) if self.w is None else np.asarray(self.w, dtype=float)
        if self.w.shape != (n,):
            raise LPInputError(f"weight vector must have length {n}")
        if not np.all(np.isfinite(self.w)) or np.any(self.w < 0):
            raise LPInputError("weights must be finite and nonnegative")
        if self.S < 1:
            raise LPInputError("team size must be >= 1")

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def m(self) -> int:
        return self.A.shape[0]

    def x_costs(self) -> np.ndarray:
        """Objective coefficients of x (t has coefficient 1)."""
        c = -self.w
        if self.tiebreak_eps:
            c = c + self.tiebreak_eps * self.A.sum(axis=0)
        return c


@dataclass
class RelaxedSolution:
    x: np.ndarray
    t: float
    objective: float
    status: LPStatus
    pivots: int = 0
    dual_bound: float | None = None
    # (basic column indices, at-upper-bound mask); a primal-feasible start
    # for any problem differing only in the objective
    basis: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    @property
    def duality_gap(self) -> float | None:
        if self.dual_bound is None:
            return None
        return self.dual_bound - self.objective


def solve_relaxation(p: RelaxedProblem, method: str = "simplex",
                     warm: tuple[np.ndarray, np.ndarray] | None = None) -> RelaxedSolution:
    """Vertex optimum of the relaxation.

    ``warm`` is the ``basis`` of an earlier simplex solution of a problem with
    the same A and S; the simplex restarts from it (ignored by HiGHS).
    """
    if p.S > p.n:
        return RelaxedSolution(np.zeros(p.n), float("nan"), float("nan"), LPStatus.INFEASIBLE)
    if method == "simplex":
        return _BoundedSimplex(p).solve(warm)
    if method == "highs":
        return _solve_highs(p)
    raise ValueError(f"unknown LP method {method!r}")


def _rank1_update(T: np.ndarray, u: np.ndarray, v: np.ndarray) -> None:
    """T -= outer(u, v) in place (BLAS dger on the transposed view)."""
    out = dger(-1.0, v, u, a=T.T, overwrite_a=1)
    if not np.shares_memory(out, T):  # T was not contiguous; dger copied
        T[...] = out.T


class _BoundedSimplex:
    """Tableau simplex with implicit upper bounds.

    Columns: x_0..x_{n-1}, t, s_0..s_{m-1}.  Rows j < m read
    ``t - A_j x + s_j = 0``; row m reads ``1'x = S``.  t is kept >= 0, which
    never cuts off an optimum because A >= 0.
    """

    def __init__(self, p: RelaxedProblem):
        self.p = p
        m, n = p.m, p.n
        self.nv = n + 1 + m
        E = np.zeros((m + 1, self.nv))
        E[:m, :n] = -p.A
        E[:m, n] = 1.0
        E[:m, n + 1:] = np.eye(m)
        E[m, :n] = 1.0
        self.E = E
        self.b = np.zeros(m + 1)
        self.b[m] = p.S
        self.upper = np.full(self.nv, np.inf)
        self.upper[:n] = 1.0
        self.c = np.zeros(self.nv)
        self.c[:n] = p.x_costs()
        self.c[n] = 1.0

    def _initial_state(self):
        m, n, S = self.p.m, self.p.n, self.p.S
        # start at the S columns of largest total coverage (lower index wins
        # ties): all but one sit at their upper bound, the last is basic in
        # the cardinality row, and the slacks absorb (A x)_j with t = 0
        order = np.lexsort((np.arange(n), -self.p.A.sum(axis=0)))[:S]
        at_upper = np.zeros(self.nv, dtype=bool)
        at_upper[order[:-1]] = True
        basis = np.concatenate([np.arange(n + 1, n + 1 + m), [order[-1]]])
        return basis, at_upper

    def solve(self, warm: tuple[np.ndarray, np.ndarray] | None = None) -> RelaxedSolution:
        m = self.p.m
        if warm is not None:
            basis, at_upper = warm[0].copy(), warm[1].copy()
        else:
            basis, at_upper = self._initial_state()
        T, z, d = self._refactor(basis, at_upper)
        # values and upper bounds of the basic variables, in row order
        xb, ub = z[basis], self.upper[basis]
        # +1 for nonbasic at the lower bound, -1 at the upper bound, 0 basic:
        # a variable can improve the objective iff sign * d > 0
        sign = np.where(at_upper, -1.0, 1.0)
        sign[basis] = 0.0

        pivots = 0
        stall = 0
        max_pivots = 50 * (self.nv + m + 1)
        while True:
            bland = stall >= DEGENERATE_STALL
            score = sign * d
            q = int(np.argmax(score > COST_TOL)) if bland else int(np.argmax(score))
            if score[q] <= COST_TOL:
                break
            sigma = -1.0 if at_upper[q] else 1.0

            col = sigma * T[:, q]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(col > PIVOT_TOL, np.maximum(xb, 0.0) / col,
                                  np.where(col < -PIVOT_TOL, np.maximum(ub - xb, 0.0) / -col, np.inf))
            theta_rows = ratios.min()
            theta_flip = self.upper[q]
            if not np.isfinite(theta_rows) and not np.isfinite(theta_flip):
                return RelaxedSolution(np.full(self.p.n, np.nan), np.inf, np.inf,
                                       LPStatus.UNBOUNDED, pivots)

            pivots += 1
            if pivots > max_pivots:
                raise RuntimeError("simplex pivot limit exceeded")

            if theta_flip <= theta_rows:
                xb -= theta_flip * col
                at_upper[q] = not at_upper[q]
                sign[q] = -sign[q]
                stall = 0
                continue

            theta = theta_rows
            ties = np.flatnonzero(ratios <= theta + 1e-12)
            # Bland: among tied rows leave the lowest-indexed variable
            r = int(ties[np.argmin(basis[ties])]) if bland else int(ties[np.argmax(np.abs(col[ties]))])
            leaving = basis[r]
            entering = (self.upper[q] if at_upper[q] else 0.0) + sigma * theta
            xb -= theta * col
            # the leaving variable sits on the bound it hit
            at_upper[leaving] = col[r] < 0
            at_upper[q] = False
            xb[r], ub[r] = entering, self.upper[q]

            piv = T[r] / T[r, q]
            _rank1_update(T, T[:, q].copy(), piv)
            T[r] = piv
            d -= d[q] * piv
            sign[leaving] = -1.0 if at_upper[leaving] else 1.0
            sign[q] = 0.0
            basis[r] = q
            stall = stall + 1 if theta <= 1e-12 else 0
            if pivots % REFACTOR_EVERY == 0:
                T, z, d = self._refactor(basis, at_upper)
                xb = z[basis]

        return self._finish(basis, at_upper, pivots)

    def _refactor(self, basis, at_upper):
        B = self.E[:, basis]
        T = np.linalg.solve(B, self.E)
        z = np.where(at_upper, self.upper, 0.0)
        z[basis] = 0.0
        z[basis] = np.linalg.solve(B, self.b - self.E @ z)
        d = self.c - self.c[basis] @ T
        return T, z, d

    def _finish(self, basis, at_upper, pivots) -> RelaxedSolution:
        n = self.p.n
        z = np.where(at_upper, self.upper, 0.0)
        z[basis] = 0.0
        B = self.E[:, basis]
        z[basis] = np.linalg.solve(B, self.b - self.E @ z)
        x = np.clip(z[:n], 0.0, 1.0)
        x[np.abs(x) < 1e-13] = 0.0
        x[np.abs(x - 1.0) < 1e-13] = 1.0
        t = float(np.min(self.p.A @ x))
        objective = t + float(self.c[:n] @ x)

        # dual certificate: y' B = c_B, reduced costs d = c - y'E
        y = np.linalg.solve(B.T, self.c[basis])
        d = self.c - y @ self.E
        finite = np.isfinite(self.upper)
        dual = float(self.b @ y + np.sum(np.maximum(d[finite], 0.0) * self.upper[finite]))
        return RelaxedSolution(x, t, objective, LPStatus.OPTIMAL, pivots, dual,
                               (basis.copy(), at_upper.copy()))


def _solve_highs(p: RelaxedProblem) -> RelaxedSolution:
    from scipy.optimize import linprog

    m, n = p.m, p.n
    c = np.concatenate([-p.x_costs(), [-1.0]])  # linprog minimises
    A_ub = np.hstack([-p.A, np.ones((m, 1))])
    A_eq = np.concatenate([np.ones(n), [0.0]])[None, :]
    bounds = [(0.0, 1.0)] * n + [(None, None)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(m), A_eq=A_eq, b_eq=[p.S],
                  bounds=bounds, method="highs-ds")
    if res.status == 2:
        return RelaxedSolution(np.zeros(n), float("nan"), float("nan"), LPStatus.INFEASIBLE)
    if res.status == 3:
        return RelaxedSolution(np.full(n, np.nan), np.inf, np.inf, LPStatus.UNBOUNDED)
    if res.status != 0:
        raise RuntimeError(f"HiGHS failed: {res.message}")
    x = np.clip(res.x[:n], 0.0, 1.0)
    t = float(np.min(p.A @ x))
    objective = t + float(p.x_costs() @ x)
    return RelaxedSolution(x, t, objective, LPStatus.OPTIMAL, int(res.nit))
