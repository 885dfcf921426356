"""Closed forms of the planar benchmark and the empirical interval estimator."""

import math

from collections.abc import Sequence

import numpy as np

from scenario_bounds.datatypes.errors import AnalyticRegimeError, InvalidParamsError

_SQRT2 = math.sqrt(2.0)
# min of -x_1 - x_2 over the unit box
EXAMPLE1_FLOOR = -2.0
# robust value of the benchmark, the relaxation level 0 of the closed form
EXAMPLE1_RCP_VALUE = -_SQRT2


def analytic_example1_rcp(gamma: float) -> float:
    """
    Robust value of the benchmark with relaxation ``gamma``: ``max{-sqrt(2) (gamma + 1), -2}``.

    Args:
        gamma (float): Nonnegative relaxation level.

    Returns:
        float: The optimal value.
    """
    if gamma < 0:
        msg = f"gamma must be nonnegative, got {gamma}"
        raise InvalidParamsError(msg)
    return max(-_SQRT2 * (gamma + 1.0), EXAMPLE1_FLOOR)


def analytic_example1_ccp(eps: float) -> float:
    """
    Chance-constrained value of the benchmark: ``max{-sqrt(2) / cos(pi eps), -2}``.

    Args:
        eps (float): Violation level in ``[0, 1/2)``.

    Returns:
        float: The optimal value.

    Raises:
        AnalyticRegimeError: If ``eps >= 1/2``, where the cosine is no longer positive.
    """
    if eps < 0:
        msg = f"eps must be nonnegative, got {eps}"
        raise InvalidParamsError(msg)
    if eps >= 0.5:  # noqa: PLR2004
        msg = f"the closed form holds for eps < 1/2 only, got {eps}"
        raise AnalyticRegimeError(msg)
    return max(-_SQRT2 / math.cos(math.pi * eps), EXAMPLE1_FLOOR)


def beta_star(eps: float, N: int) -> float:
    """
    Confidence parameter achieved by ``N`` scenarios in dimension 2: ``(1 - eps)^N + N eps (1 - eps)^(N - 1)``.
    """
    if not 0.0 <= eps <= 1.0:
        msg = f"eps must lie in [0, 1], got {eps}"
        raise InvalidParamsError(msg)
    return min(1.0, (1.0 - eps) ** N + N * eps * (1.0 - eps) ** (N - 1))


def empirical_interval(diffs: Sequence[float] | np.ndarray, beta: float) -> float:
    """
    Smallest width ``w`` such that at least ``(1 - beta) M`` of the differences lie in ``[0, w]``.

    This is the ``ceil((1 - beta) M)``-th smallest difference. Differences within ``1e-9`` below zero count as
    zero; ``+inf`` marks an experiment that no finite width covers.

    Args:
        diffs (Sequence[float] | np.ndarray): One difference per experiment.
        beta (float): The allowed fraction of uncovered experiments.

    Returns:
        float: The empirical width, 0 when ``beta >= 1``.
    """
    values = np.asarray(diffs, dtype=float).reshape(-1)
    if values.size == 0:
        msg = "at least one experiment is required"
        raise InvalidParamsError(msg)
    if np.any(values < -1e-9):
        msg = f"differences must be nonnegative, got {values.min()}"
        raise InvalidParamsError(msg)
    if beta >= 1.0:
        return 0.0
    rank = math.ceil((1.0 - beta) * values.size - 1e-9)
    if rank <= 0:
        return 0.0
    return float(np.sort(np.maximum(values, 0.0))[rank - 1])
