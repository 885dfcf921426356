"""Dense tableau two-phase primal simplex with Bland's rule."""

import numpy as np

from loguru import logger

from scenario_bounds.datatypes.errors import SolverStallError
from scenario_bounds.datatypes.lp import LinearProgram, LpResult, LpStatus
from scenario_bounds.services.metrics.metrics import Metric, metrics_service
from scenario_bounds.settings import settings


class _StandardForm:
    """
    The program rewritten over nonnegative variables ``z`` with ``x = shift + Q z``.

    Finite lower bounds shift the variable, upper-only bounds reflect it, free variables split in two.
    Finite upper bounds of shifted variables become explicit rows appended after the program rows.
    """

    def __init__(self, lp: LinearProgram) -> None:
        n = lp.n
        self.shift = np.zeros(n)
        columns: list[np.ndarray] = []
        # (variable, sign) for each z column; sign -1 marks a reflected upper bound
        self.column_source: list[tuple[int, int]] = []
        upper_rows: list[tuple[int, int, float]] = []
        for j in range(n):
            unit = np.zeros(n)
            unit[j] = 1.0
            lo, hi = lp.lower[j], lp.upper[j]
            if np.isfinite(lo):
                self.shift[j] = lo
                columns.append(unit)
                self.column_source.append((j, 1))
                if np.isfinite(hi):
                    upper_rows.append((len(columns) - 1, j, hi - lo))
            elif np.isfinite(hi):
                self.shift[j] = hi
                columns.append(-unit)
                self.column_source.append((j, -1))
            else:
                columns.append(unit)
                columns.append(-unit)
                self.column_source.extend([(j, 0), (j, 0)])
        self.Q = np.column_stack(columns) if columns else np.zeros((n, 0))
        nz = self.Q.shape[1]

        rows = lp.A @ self.Q
        rhs = lp.b - lp.A @ self.shift
        box_rows = np.zeros((len(upper_rows), nz))
        box_rhs = np.zeros(len(upper_rows))
        self.upper_row_variable: list[int] = []
        for k, (col, j, width) in enumerate(upper_rows):
            box_rows[k, col] = 1.0
            box_rhs[k] = width
            self.upper_row_variable.append(j)
        self.A = np.vstack([rows, box_rows])
        self.b = np.concatenate([rhs, box_rhs])
        self.cost = self.Q.T @ lp.c
        self.num_program_rows = lp.m


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    pivot_row = tableau[row] / tableau[row, col]
    tableau -= np.outer(tableau[:, col], pivot_row)
    tableau[row] = pivot_row


def _entering(objective: np.ndarray, allowed: int, tol: float) -> int | None:
    # Bland: smallest index with a negative reduced cost
    candidates = np.flatnonzero(objective[:allowed] < -tol)
    return int(candidates[0]) if candidates.size else None


# ratios this many ulps apart count as a tie in the ratio test
_RATIO_ULPS = 16


def _leaving(tableau: np.ndarray, col: int, num_rows: int, basis: list[int]) -> int | None:
    column = tableau[:num_rows, col]
    eligible = np.flatnonzero(column > settings.feasibility_tol)
    if eligible.size == 0:
        return None
    ratios = np.maximum(tableau[eligible, -1], 0.0) / column[eligible]
    best = ratios.min()
    # ties within a few ulps of the minimum only
    ties = eligible[ratios <= best + _RATIO_ULPS * np.spacing(max(1.0, abs(best)))]
    # Bland: among tied rows, the one whose basic variable has the smallest index
    return int(min(ties, key=lambda i: basis[i]))


def _run_phase(
    tableau: np.ndarray,
    basis: list[int],
    num_rows: int,
    allowed: int,
    pivots: int,
    cost_tol: float,
) -> tuple[bool, int]:
    """
    Pivot until the last tableau row has no reduced cost below ``-cost_tol`` among the allowed columns.

    The ratio test picks the exact minimum-ratio row, ties broken by Bland's rule.

    Returns:
        tuple[bool, int]: Whether the phase ended bounded, and the running pivot count.
    """
    objective = tableau[-1]
    while True:
        col = _entering(objective, allowed, cost_tol)
        if col is None:
            return True, pivots
        row = _leaving(tableau, col, num_rows, basis)
        if row is None:
            return False, pivots
        _pivot(tableau, row, col)
        basis[row] = col
        pivots += 1
        if pivots > settings.max_pivots:
            raise SolverStallError(pivots)


def solve_lp(lp: LinearProgram) -> LpResult:  # noqa: C901, PLR0915
    """
    Solve a linear program with the two-phase primal simplex method.

    The tableau is dense and Bland's rule makes the pivot sequence, and hence the
    returned optimizer, deterministic for a fixed input.

    Args:
        lp (LinearProgram): The program to solve.

    Returns:
        LpResult: The status and, when optimal, the optimizer, the value and the multipliers.

    Raises:
        SolverStallError: If the pivot budget from the settings is exhausted.
    """
    tol = settings.feasibility_tol
    form = _StandardForm(lp)
    m, nz = form.A.shape

    A = form.A.copy()
    b = form.b.copy()
    negative = b < 0
    A[negative] *= -1.0
    b[negative] *= -1.0
    slack_sign = np.where(negative, -1.0, 1.0)
    artificial_rows = np.flatnonzero(negative)
    num_art = artificial_rows.size

    num_struct = nz + m
    # rows: constraints, phase-two objective, phase-one objective
    tableau = np.zeros((m + 2, num_struct + num_art + 1))
    tableau[:m, :nz] = A
    tableau[:m, nz:num_struct] = np.diag(slack_sign) if m else np.zeros((0, 0))
    tableau[:m, -1] = b
    basis = [nz + i for i in range(m)]
    for k, i in enumerate(artificial_rows):
        tableau[i, num_struct + k] = 1.0
        basis[i] = num_struct + k
    tableau[m, :nz] = form.cost
    if num_art:
        tableau[m + 1] = -tableau[artificial_rows].sum(axis=0)
        tableau[m + 1, num_struct : num_struct + num_art] = 0.0

    pivots = 0
    scale = max(1.0, float(np.abs(b).max(initial=0.0)))
    if num_art:
        _, pivots = _run_phase(tableau, basis, m, num_struct + num_art, pivots, tol)
        if -tableau[m + 1, -1] > tol * scale:
            logger.debug(f"Phase one ended with infeasibility {-tableau[m + 1, -1]:.3e}")
            return _finish(LpResult(status=LpStatus.INFEASIBLE, row_tags=lp.row_tags, pivots=pivots))
        # drive remaining artificial variables out of the basis, dropping redundant rows
        keep = np.ones(m + 2, dtype=bool)
        for i in range(m):
            if basis[i] < num_struct:
                continue
            candidates = np.flatnonzero(np.abs(tableau[i, :num_struct]) > tol)
            if candidates.size:
                col = int(candidates[0])
                _pivot(tableau, i, col)
                basis[i] = col
                pivots += 1
            else:
                keep[i] = False
        basis = [basis[i] for i in range(m) if keep[i]]
        tableau = tableau[keep]
        m = len(basis)
    # discard phase one: artificial columns and objective
    tableau = np.delete(tableau, np.s_[num_struct : num_struct + num_art], axis=1)[:-1]

    bounded, pivots = _run_phase(tableau, basis, m, num_struct, pivots, settings.dual_tol)
    if not bounded:
        return _finish(LpResult(status=LpStatus.UNBOUNDED, row_tags=lp.row_tags, pivots=pivots))

    z = np.zeros(num_struct)
    for i, var in enumerate(basis):
        z[var] = tableau[i, -1]
    x = form.shift + form.Q @ z[:nz]
    reduced = tableau[-1, :num_struct]

    row_multipliers = np.maximum(reduced[nz:], 0.0)
    lower_duals = np.zeros(lp.n)
    upper_duals = np.zeros(lp.n)
    for col, (j, sign) in enumerate(form.column_source):
        if sign == 1:
            lower_duals[j] = max(reduced[col], 0.0)
        elif sign == -1:
            upper_duals[j] = max(reduced[col], 0.0)
    for k, j in enumerate(form.upper_row_variable):
        upper_duals[j] = row_multipliers[form.num_program_rows + k]

    return _finish(
        LpResult(
            status=LpStatus.OPTIMAL,
            x=x,
            value=float(lp.c @ x),
            duals=row_multipliers[: form.num_program_rows],
            lower_duals=lower_duals,
            upper_duals=upper_duals,
            row_tags=lp.row_tags,
            pivots=pivots,
        ),
    )


def _finish(result: LpResult) -> LpResult:
    metrics_service.increment(Metric.COUNT_LP_SOLVES, {"status": result.status.value})
    metrics_service.increment(Metric.COUNT_PIVOTS, value=result.pivots)
    return result
