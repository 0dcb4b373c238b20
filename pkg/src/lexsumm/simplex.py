"""Bounded-variable primal simplex for small dense LPs.

Maximizes ``c @ x`` subject to ``a_ub @ x <= b_ub`` and ``lower <= x <= upper``.
Two phases: artificial variables repair an infeasible slack start, then the
real objective is optimized. Pricing uses Dantzig's rule for speed and falls
back permanently to Bland's smallest-index rule once degenerate pivots stall
the objective, so cycling is impossible; the leaving variable always follows
Bland's tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

_RATIO_EPS = 1e-11
_TIE_EPS = 1e-12


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible"
    objective: float
    x: np.ndarray
    # Reduced costs of the structural variables at the final basis; together
    # with the objective they bound the cost of moving a variable off its
    # bound (used for variable fixing in branch-and-bound).
    reduced_costs: np.ndarray | None = None


def _pivot_loop(M, b, cvec, lo, hi, basis, at_hi, tol, max_iter):
    """Run primal simplex iterations in place; returns the final point.

    Pricing is Dantzig's largest-violation rule until the objective stalls
    over consecutive degenerate pivots, then permanently Bland's
    smallest-index rule, which guarantees termination.
    """
    m, total = M.shape
    in_basis = np.zeros(total, dtype=bool)
    in_basis[basis] = True
    free = hi - lo > tol
    bland = False
    stall = 0
    last_objective = -np.inf

    for _ in range(max_iter):
        lu = lu_factor(M[:, basis], check_finite=False)
        x = np.where(at_hi, hi, lo)
        x[basis] = 0.0
        xb = lu_solve(lu, b - M @ x, check_finite=False)
        x[basis] = xb

        objective = float(cvec @ x)
        if objective > last_objective + 1e-12:
            stall = 0
        else:
            stall += 1
            if stall > 25:
                bland = True
        last_objective = objective

        y = lu_solve(lu, cvec[basis], trans=1, check_finite=False)
        rc = cvec - y @ M
        violation = np.where(at_hi, -rc, rc)
        violation[in_basis | ~free] = 0.0
        if bland:
            idx = np.nonzero(violation > tol)[0]
            if idx.size == 0:
                return x, rc
            entering = int(idx[0])
        else:
            entering = int(np.argmax(violation))
            if violation[entering] <= tol:
                return x, rc
        dirn = -1.0 if at_hi[entering] else 1.0

        w = lu_solve(lu, M[:, entering], check_finite=False)
        delta = -dirn * w  # change of basic values per unit step
        tcand = np.full(m, np.inf)
        up = delta > _RATIO_EPS
        dn = delta < -_RATIO_EPS
        with np.errstate(invalid="ignore"):
            tcand[up] = (hi[basis[up]] - xb[up]) / delta[up]
            tcand[dn] = (xb[dn] - lo[basis[dn]]) / (-delta[dn])
        tcand = np.maximum(tcand, 0.0)

        t_limit = hi[entering] - lo[entering]
        t_min = min(float(tcand.min(initial=np.inf)), t_limit)
        if not np.isfinite(t_min):
            raise ArithmeticError("LP is unbounded")

        # Bland: among all blocking variables at the minimum ratio, the one
        # with the smallest variable index leaves (a bound flip counts as the
        # entering variable blocking itself).
        leave_var = entering if t_limit <= t_min + _TIE_EPS else total
        leave_pos = -1
        for pos in np.nonzero(tcand <= t_min + _TIE_EPS)[0]:
            bi = int(basis[pos])
            if bi < leave_var:
                leave_var, leave_pos = bi, int(pos)

        if leave_pos < 0:
            at_hi[entering] = not at_hi[entering]
        else:
            in_basis[leave_var] = False
            in_basis[entering] = True
            at_hi[leave_var] = bool(delta[leave_pos] > 0)
            basis[leave_pos] = entering
    raise ArithmeticError("simplex iteration limit exceeded")


def solve_lp(c, a_ub, b_ub, lower, upper, *, tol=1e-10, max_iter=20000) -> LpResult:
    """Solve max c@x s.t. a_ub@x <= b_ub, lower <= x <= upper.

    Structural lower bounds must be finite. Infeasible bound pairs or an
    unsatisfiable constraint system yield status "infeasible".
    """
    c = np.asarray(c, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    n = c.shape[0]
    a_ub = np.asarray(a_ub, dtype=float).reshape(-1, n)
    b_ub = np.asarray(b_ub, dtype=float)
    m = a_ub.shape[0]
    if not np.all(np.isfinite(lower)):
        raise ValueError("structural lower bounds must be finite")
    if np.any(lower > upper + tol):
        return LpResult("infeasible", 0.0, np.empty(0))

    if m == 0:
        x = np.where(c > 0, upper, lower)
        if np.any((c > tol) & ~np.isfinite(x)):
            raise ArithmeticError("LP is unbounded")
        return LpResult("optimal", float(c @ x), x, reduced_costs=c.copy())

    M = np.hstack([a_ub, np.eye(m)])
    lo = np.concatenate([lower, np.zeros(m)])
    hi = np.concatenate([upper, np.full(m, np.inf)])

    slack0 = b_ub - a_ub @ lower
    bad_rows = np.nonzero(slack0 < -tol)[0]
    n_art = bad_rows.size
    if n_art:
        R = np.zeros((m, n_art))
        R[bad_rows, np.arange(n_art)] = -1.0
        M = np.hstack([M, R])
        lo = np.concatenate([lo, np.zeros(n_art)])
        hi = np.concatenate([hi, np.full(n_art, np.inf)])
    total = M.shape[1]

    basis = np.arange(n, n + m)
    basis[bad_rows] = n + m + np.arange(n_art)
    at_hi = np.zeros(total, dtype=bool)

    if n_art:
        c1 = np.zeros(total)
        c1[n + m :] = -1.0
        x, _ = _pivot_loop(M, b_ub, c1, lo, hi, basis, at_hi, tol, max_iter)
        if float(x[n + m :].sum()) > max(1e-7, tol * 100):
            return LpResult("infeasible", 0.0, np.empty(0))
        hi[n + m :] = 0.0  # lock artificials out of phase 2

    c2 = np.zeros(total)
    c2[:n] = c
    x, rc = _pivot_loop(M, b_ub, c2, lo, hi, basis, at_hi, tol, max_iter)
    xs = np.minimum(np.maximum(x[:n], lower), upper)
    return LpResult("optimal", float(c @ xs), xs, reduced_costs=rc[:n].copy())
