"""Second-stage selection of the least-norm optimizer with an away-step conditional-gradient method."""

import numpy as np

from loguru import logger

from scenario_bounds.datatypes.errors import TieBreakError
from scenario_bounds.datatypes.lp import LinearProgram, LpStatus, RowTag
from scenario_bounds.datatypes.problems import ScenarioSet, UncertainProgram
from scenario_bounds.datatypes.solutions import TieBreakResult
from scenario_bounds.services.lp.simplex import solve_lp
from scenario_bounds.services.metrics.metrics import Metric, metrics_service
from scenario_bounds.settings import settings


class _ActiveSet:
    """Vertices with convex weights whose combination is the current iterate."""

    def __init__(self, vertex: np.ndarray) -> None:
        self.vertices = [vertex]
        self.weights = [1.0]

    def index_of(self, vertex: np.ndarray) -> int | None:
        for k, known in enumerate(self.vertices):
            if np.allclose(known, vertex, rtol=0.0, atol=1e-12):
                return k
        return None

    def away_vertex(self, grad: np.ndarray) -> int:
        return int(np.argmax([grad @ v for v in self.vertices]))

    def forward(self, vertex: np.ndarray, step: float) -> None:
        if step >= 1.0:
            self.vertices, self.weights = [vertex], [1.0]
            return
        self.weights = [w * (1.0 - step) for w in self.weights]
        k = self.index_of(vertex)
        if k is None:
            self.vertices.append(vertex)
            self.weights.append(step)
        else:
            self.weights[k] += step

    def away(self, k: int, step: float, max_step: float) -> None:
        self.weights = [w * (1.0 + step) for w in self.weights]
        self.weights[k] -= step
        if step >= max_step:
            del self.vertices[k]
            del self.weights[k]


def _optimal_face_lp(
    program: UncertainProgram,
    scenarios: ScenarioSet,
    value: float,
) -> tuple[np.ndarray, np.ndarray, tuple[RowTag, ...]]:
    a, b = program.constraint.rows(scenarios.points)
    slack = settings.tie_break_slack * max(1.0, abs(value))
    rows = np.vstack([a.reshape(-1, program.n), program.c])
    rhs = np.concatenate([b, [value + slack]])
    return rows, rhs, (RowTag.SCENARIO,) * scenarios.N + (RowTag.OBJECTIVE_CUT,)


def tie_break(program: UncertainProgram, scenarios: ScenarioSet, value: float) -> TieBreakResult:
    """
    Select the minimizer of ``||x||^2`` over the optimal face of the scenario program.

    The face is the domain intersected with the scenario rows and ``c.x <= value``, the cut
    being admitted with a small slack. Linear subproblems are solved with the simplex
    method, and the iteration starts from the first-stage vertex.

    Args:
        program (UncertainProgram): The program data.
        scenarios (ScenarioSet): The scenarios of the first stage.
        value (float): The first-stage optimal value.

    Returns:
        TieBreakResult: The selected optimizer, which does not depend on the scenario order.

    Raises:
        TieBreakError: If the optimal face is empty, i.e. ``value`` is not the first-stage optimum.
    """
    rows, rhs, tags = _optimal_face_lp(program, scenarios, value)

    def linear_oracle(direction: np.ndarray) -> np.ndarray:
        lp: LinearProgram = program.domain.to_lp(direction, rows, rhs, tags)
        result = solve_lp(lp)
        if result.status != LpStatus.OPTIMAL or result.x is None:
            raise TieBreakError(f"linear subproblem returned {result.status.value}")
        return np.array(result.x)

    x = linear_oracle(np.asarray(program.c))
    active = _ActiveSet(x)
    gap = np.inf
    iteration = 0
    for iteration in range(1, settings.tie_break_max_iterations + 1):  # noqa: B007
        grad = 2.0 * x
        s = linear_oracle(grad)
        gap = float(grad @ (x - s))
        if gap <= settings.tie_break_gap_tol:
            break
        k = active.away_vertex(grad)
        away_gap = float(grad @ (active.vertices[k] - x))
        if gap >= away_gap or active.weights[k] >= 1.0:
            direction, max_step, forward = s - x, 1.0, True
        else:
            weight = active.weights[k]
            direction, max_step, forward = x - active.vertices[k], weight / (1.0 - weight), False
        norm = float(direction @ direction)
        if norm == 0.0:
            break
        step = min(max(-float(x @ direction) / norm, 0.0), max_step)
        if forward:
            active.forward(s, step)
        else:
            active.away(k, step, max_step)
        x = x + step * direction
    else:
        logger.warning(f"Tie-break stopped after {iteration} iterations with gap {gap:.3e}")

    metrics_service.increment(Metric.COUNT_TIE_BREAK_ITERATIONS, value=iteration)
    converged = gap <= settings.tie_break_gap_tol
    logger.debug(f"Tie-break finished after {iteration} iterations, gap {gap:.3e}")
    return TieBreakResult(x=x, iterations=iteration, gap=max(gap, 0.0), converged=converged)
