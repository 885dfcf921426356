import numpy as np

from loguru import logger
from pydantic import BaseModel, Field

from scenario_bounds.datatypes.errors import InvalidParamsError
from scenario_bounds.datatypes.problems import AffineConstraintOracle, Sampler, ScenarioSet


class ViolationEstimate(BaseModel):
    """
    Monte Carlo estimate of the violation probability ``P[f(x, d) > 0]``.

    Attributes:
        probability (float): Fraction of the K draws with a positive constraint value.
        violations (int): Number of violating draws.
        K (int): Number of draws.
    """

    probability: float = Field(ge=0.0, le=1.0)
    violations: int = Field(ge=0)
    K: int = Field(gt=0)

    @property
    def std_error(self) -> float:
        """Binomial standard error of the estimate."""
        p = self.probability
        return float(np.sqrt(p * (1.0 - p) / self.K))


def sample_scenarios(sampler: Sampler, N: int, seed: int) -> ScenarioSet:
    """
    Draw the points at indices ``1..N`` of the sampler stream keyed by ``seed``.

    Args:
        sampler (Sampler): The uncertainty sampler.
        N (int): Number of scenarios, at least 1.
        seed (int): The stream seed.

    Returns:
        ScenarioSet: The scenarios; the first ``k`` of them are the set drawn with ``N = k``.
    """
    if N < 1:
        msg = f"N must be at least 1, got {N}"
        raise InvalidParamsError(msg)
    points = sampler.draw(seed, np.arange(1, N + 1))
    logger.debug(f"Sampled {N} scenarios from {sampler.description} with seed {seed}")
    return ScenarioSet(points=points, seed=seed)


def estimate_violation(
    x: np.ndarray,
    constraint: AffineConstraintOracle,
    sampler: Sampler,
    K: int,
    seed: int,
) -> ViolationEstimate:
    """
    Estimate the probability that ``x`` violates the constraint.

    Args:
        x (np.ndarray): The decision.
        constraint (AffineConstraintOracle): The constraint f.
        sampler (Sampler): The uncertainty sampler.
        K (int): Number of Monte Carlo draws.
        seed (int): The stream seed.

    Returns:
        ViolationEstimate: The fraction of draws with ``f(x, d) > 0`` and the draw count.
    """
    if K < 1:
        msg = f"K must be at least 1, got {K}"
        raise InvalidParamsError(msg)
    values = constraint.evaluate(x, sampler.draw(seed, np.arange(1, K + 1)))
    violations = int(np.count_nonzero(values > 0))
    return ViolationEstimate(probability=violations / K, violations=violations, K=K)
