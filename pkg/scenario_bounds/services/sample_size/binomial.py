"""Exact binomial-tail sample-size bounds for scenario programs and unions of them."""

import math

from collections.abc import Callable, Sequence

import numpy as np

from loguru import logger
from scipy.special import gammaln, xlog1py, xlogy

from scenario_bounds.datatypes.errors import InvalidParamsError, UnachievableSampleSizeError

# beyond this no double-precision sample count is meaningful
_MAX_SAMPLES = 2**53


def _check_probability(name: str, value: float, *, allow_zero: bool = True) -> None:
    if not (0.0 <= value <= 1.0) or (not allow_zero and value == 0.0):
        msg = f"{name} must lie in {'[0, 1]' if allow_zero else '(0, 1]'}, got {value}"
        raise InvalidParamsError(msg)


def binomial_tail(N: int, n: int, eps: float) -> float:
    """
    Evaluate ``sum_{i < n} C(N, i) eps^i (1 - eps)^(N - i)``.

    Terms are formed in log-space with log-gamma binomials and summed with compensated summation.
    When ``N < n`` the sum stops at ``i = N`` and equals 1.

    Args:
        N (int): Number of samples, at least 1.
        n (int): Decision dimension, at least 1.
        eps (float): Violation level in ``[0, 1]``.

    Returns:
        float: The tail probability, clipped to ``[0, 1]``.
    """
    if N < 1 or n < 1:
        msg = f"N and n must be at least 1, got N={N}, n={n}"
        raise InvalidParamsError(msg)
    _check_probability("eps", eps)
    i = np.arange(min(n, N + 1), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_terms = (
            gammaln(N + 1.0)
            - gammaln(i + 1.0)
            - gammaln(N - i + 1.0)
            + xlogy(i, eps)
            + xlog1py(N - i, -eps)
        )
        terms = np.exp(log_terms)
    return min(1.0, max(0.0, math.fsum(terms.tolist())))


def _minimal_samples(condition: Callable[[int], bool]) -> int:
    """
    Smallest ``N >= 1`` with ``condition(N)``, for a condition that holds from some N on.

    Exponential search brackets the boundary, binary search locates it and a local scan
    re-verifies that ``N - 1`` fails and ``N`` passes.
    """
    if condition(1):
        return 1
    lo, hi = 1, 2
    while not condition(hi):
        lo, hi = hi, hi * 2
        if hi > _MAX_SAMPLES:
            msg = "no sample count below 2^53 satisfies the tail condition"
            raise InvalidParamsError(msg)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if condition(mid):
            hi = mid
        else:
            lo = mid
    N = hi
    while N > 1 and condition(N - 1):
        N -= 1
    while not condition(N):
        N += 1
    return N


def sample_size(eps: float, beta: float, n: int) -> int:
    """
    Minimal number of scenarios whose optimizer is chance feasible at level ``eps`` with confidence ``1 - beta``.

    Args:
        eps (float): Violation level in ``(0, 1]``.
        beta (float): Confidence parameter in ``(0, 1]``.
        n (int): Decision dimension.

    Returns:
        int: The minimal ``N >= 1`` with ``binomial_tail(N, n, eps) <= beta``.

    Raises:
        UnachievableSampleSizeError: If ``eps = 0`` and ``beta < 1``.
    """
    return sample_size_union([eps], beta, n)


def sample_size_union(eps_vec: Sequence[float], beta: float, n: int) -> int:
    """
    Minimal number of scenarios for a union of ``m`` subprograms with levels ``eps_vec``.

    Args:
        eps_vec (Sequence[float]): One violation level per subprogram.
        beta (float): Confidence parameter in ``(0, 1]``.
        n (int): Decision dimension shared by all subprograms.

    Returns:
        int: The minimal ``N >= 1`` with ``sum_k binomial_tail(N, n, eps_k) <= beta``.

    Raises:
        UnachievableSampleSizeError: If a zero level makes the condition unreachable.
    """
    if len(eps_vec) == 0:
        msg = "at least one violation level is required"
        raise InvalidParamsError(msg)
    if n < 1:
        msg = f"n must be at least 1, got {n}"
        raise InvalidParamsError(msg)
    for eps in eps_vec:
        _check_probability("eps", eps)
    _check_probability("beta", beta, allow_zero=False)
    levels = [float(eps) for eps in eps_vec]
    if 0.0 in levels and (beta < 1.0 or any(eps < 1.0 for eps in levels if eps > 0.0)):
        # a zero level contributes a tail of exactly 1 for every N
        raise UnachievableSampleSizeError(min(levels), beta)

    def condition(N: int) -> bool:
        return math.fsum(binomial_tail(N, n, eps) for eps in levels) <= beta

    N = _minimal_samples(condition)
    logger.debug(f"Sample size for eps={levels}, beta={beta}, n={n}: {N}")
    return N
