import numpy as np

from loguru import logger

from scenario_bounds.datatypes.errors import SolverStallError
from scenario_bounds.datatypes.lp import LpStatus
from scenario_bounds.datatypes.problems import Polytope
from scenario_bounds.services.lp.simplex import solve_lp


def value_range(c: np.ndarray, polytope: Polytope) -> tuple[float, float]:
    """
    Compute the range of a linear objective over a polytope.

    Args:
        c (np.ndarray): The cost vector.
        polytope (Polytope): A certified (nonempty, bounded) polytope.

    Returns:
        tuple[float, float]: ``(min c.x, max c.x)`` over the polytope.
    """
    c = np.asarray(c, dtype=float)
    low = solve_lp(polytope.to_lp(c))
    high = solve_lp(polytope.to_lp(-c))
    if low.status != LpStatus.OPTIMAL or high.status != LpStatus.OPTIMAL:
        # a certified polytope always yields optimal solves
        raise SolverStallError(low.pivots + high.pivots)
    lo, hi = float(low.value), -float(high.value)
    logger.debug(f"Objective range over the domain: [{lo}, {hi}]")
    return lo, max(lo, hi)
