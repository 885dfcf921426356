from collections.abc import Sequence

import numpy as np

from loguru import logger

from scenario_bounds.datatypes.bounds import Ulb, UlbCheckReport, UlbCheckRow
from scenario_bounds.datatypes.errors import InvalidParamsError, InvalidUlbError
from scenario_bounds.datatypes.problems import UncertainProgram
from scenario_bounds.services.workers import parallel_map


def build_ulb(L_d: float, kappa: float, p: float) -> Ulb:
    """
    Build the level-set bound ``h(eps) = L_d * (eps / kappa)^(1/p)``.

    Args:
        L_d (float): Lipschitz constant of the constraint in the uncertainty, positive.
        kappa (float): Scale of the ball-measure bound ``g(r) = kappa * r^p``, positive.
        p (float): Exponent of the ball-measure bound, at least 1.

    Returns:
        Ulb: The bound.

    Raises:
        InvalidUlbError: If a parameter is outside its range.
    """
    if not L_d > 0:
        raise InvalidUlbError(f"L_d must be positive, got {L_d}")
    if not kappa > 0:
        raise InvalidUlbError(f"kappa must be positive for g to bound ball measures, got {kappa}")
    if not p >= 1:
        raise InvalidUlbError(f"p must be at least 1, got {p}")
    return Ulb(L_d=L_d, kappa=kappa, p=p)


def _tail_probabilities(values: np.ndarray, worst: float, deltas: np.ndarray) -> np.ndarray:
    # P[worst - delta < f(x, d)] for each delta
    return (values[None, :] > worst - deltas[:, None]).mean(axis=1)


def tail_probability(program: UncertainProgram, x: np.ndarray, delta: float, K: int, seed: int) -> float:
    """
    Estimate the probability that a random scenario comes within ``delta`` of the worst case at ``x``.

    Args:
        program (UncertainProgram): The program, whose constraint needs a worst-case oracle.
        x (np.ndarray): The decision.
        delta (float): The distance to the worst case.
        K (int): Monte Carlo draws.
        seed (int): The stream seed.

    Returns:
        float: The estimate of ``P[sup_v f(x, v) - delta < f(x, d)]``.
    """
    if K < 1:
        msg = f"K must be at least 1, got {K}"
        raise InvalidParamsError(msg)
    values = program.constraint.evaluate(x, program.sampler.draw(seed, np.arange(1, K + 1)))
    worst = program.constraint.worst_case(x)
    return float(_tail_probabilities(values, worst, np.array([delta]))[0])


def ulb_empirical_check(
    ulb: Ulb,
    program: UncertainProgram,
    x_grid: Sequence[Sequence[float]],
    eps_grid: Sequence[float],
    K: int,
    seed: int,
) -> UlbCheckReport:
    """
    Check a level-set bound by Monte Carlo on a grid of decisions and levels.

    A level-set bound must satisfy ``P[sup f(x, .) - h(eps) < f(x, d)] >= eps`` for every ``x``; each grid point
    is flagged when the estimate falls below ``eps`` by more than three binomial standard errors.
    Passing the check is evidence, not a proof.

    Args:
        ulb (Ulb): The bound to check.
        program (UncertainProgram): The program, whose constraint needs a worst-case oracle.
        x_grid (Sequence[Sequence[float]]): Decisions to test.
        eps_grid (Sequence[float]): Levels to test.
        K (int): Monte Carlo draws per decision.
        seed (int): The stream seed, shared by all decisions.

    Returns:
        UlbCheckReport: One row per decision and level.
    """
    if K < 1:
        msg = f"K must be at least 1, got {K}"
        raise InvalidParamsError(msg)
    levels = np.asarray(eps_grid, dtype=float)
    deltas = np.asarray(ulb.h(levels), dtype=float)
    slacks = 3.0 * np.sqrt(levels * (1.0 - levels) / K)
    points = program.sampler.draw(seed, np.arange(1, K + 1))

    def check(x: Sequence[float]) -> list[UlbCheckRow]:
        decision = np.asarray(x, dtype=float)
        values = program.constraint.evaluate(decision, points)
        tails = _tail_probabilities(values, program.constraint.worst_case(decision), deltas)
        return [
            UlbCheckRow(
                x=decision.tolist(),
                eps=float(eps),
                delta=float(delta),
                tail_probability=float(tail),
                slack=float(slack),
                violated=bool(tail < eps - slack),
            )
            for eps, delta, tail, slack in zip(levels, deltas, tails, slacks, strict=True)
        ]

    rows = [row for rows_at_x in parallel_map(check, x_grid) for row in rows_at_x]
    report = UlbCheckReport(rows=rows, K=K)
    if report.violations:
        logger.warning(f"Level-set bound violated at {len(report.violations)} of {len(rows)} grid points")
    return report
