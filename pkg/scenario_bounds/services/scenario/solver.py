from collections.abc import Sequence

import numpy as np

from loguru import logger

from scenario_bounds.datatypes.errors import InvalidParamsError
from scenario_bounds.datatypes.lp import LinearProgram, RowTag
from scenario_bounds.datatypes.problems import ScenarioSet, UncertainProgram
from scenario_bounds.datatypes.solutions import ScpSolution
from scenario_bounds.services.lp.simplex import solve_lp
from scenario_bounds.services.metrics.metrics import Metric, metrics_service


def scenario_lp(program: UncertainProgram, scenarios: ScenarioSet, gamma: float = 0.0) -> LinearProgram:
    """
    Lower the scenario program to a linear program.

    Each scenario becomes the row ``a(d_i).x <= b(d_i) + gamma``, in scenario order, followed by the domain rows.
    Duplicate scenarios stay duplicate rows.

    Args:
        program (UncertainProgram): The program data.
        scenarios (ScenarioSet): The drawn scenarios.
        gamma (float): Relaxation of the scenario rows.

    Returns:
        LinearProgram: The lowered program with scenario rows tagged ``SCENARIO``.
    """
    a, b = program.constraint.rows(scenarios.points)
    return program.domain.to_lp(
        program.c,
        a.reshape(-1, program.n),
        b + gamma,
        (RowTag.SCENARIO,) * scenarios.N,
    )


def solve_scp(program: UncertainProgram, scenarios: ScenarioSet, gamma: float = 0.0) -> ScpSolution:
    """
    Solve the scenario program ``min c.x`` over the domain subject to ``f(x, d_i) <= gamma`` for every scenario.

    An infeasible program is reported through the status of the solution, never relaxed.

    Args:
        program (UncertainProgram): The program data.
        scenarios (ScenarioSet): The drawn scenarios.
        gamma (float): Nonnegative relaxation level, 0 for the scenario program itself.

    Returns:
        ScpSolution: The optimizer, the value and the scenario multipliers.
    """
    if gamma < 0 or not np.isfinite(gamma):
        msg = f"gamma must be a nonnegative real, got {gamma}"
        raise InvalidParamsError(msg)
    result = solve_lp(scenario_lp(program, scenarios, gamma))
    metrics_service.increment(Metric.COUNT_SCENARIO_SOLVES, {"status": result.status.value})
    logger.debug(f"Scenario program with N={scenarios.N}, gamma={gamma}: {result.status.value} in {result.pivots} pivots")
    if result.x is None:
        return ScpSolution(status=result.status, gamma=gamma, scenarios=scenarios, pivots=result.pivots)
    return ScpSolution(
        status=result.status,
        x=result.x,
        value=result.value,
        scenario_duals=result.duals_for(RowTag.SCENARIO),
        gamma=gamma,
        scenarios=scenarios,
        pivots=result.pivots,
    )


def dual_l1(solution: ScpSolution) -> float:
    """
    The l1 norm of the scenario-row multipliers; domain rows and the box are excluded.

    Raises:
        InvalidParamsError: If the solution is not optimal.
    """
    if not solution.is_optimal:
        msg = f"dual norm needs an optimal solution, got {solution.status.value}"
        raise InvalidParamsError(msg)
    return solution.dual_l1


def relaxed_value_curve(
    program: UncertainProgram,
    scenarios: ScenarioSet,
    gammas: Sequence[float],
) -> list[ScpSolution]:
    """Solve the scenario program once per relaxation level, in the given order."""
    return [solve_scp(program, scenarios, gamma) for gamma in gammas]
