from pydantic import BaseModel

from scenario_bounds.datatypes.bounds import ConfidenceReport
from scenario_bounds.datatypes.nonconvex import UnionReport
from scenario_bounds.datatypes.solutions import ScpSolution, SpSolution, TieBreakResult


class SampleSizeOutcome(BaseModel):
    """The minimal sample size and the tail value it achieves."""

    N: int
    tail: float


class SolveOutcome(BaseModel):
    """A solved scenario program with its optional second-stage optimizer."""

    name: str
    n_scenarios: int
    seed: int
    solution: ScpSolution
    tie_break: TieBreakResult | None = None


class BoundsOutcome(BaseModel):
    """
    Confidence intervals of a problem around its scenario value.

    Attributes:
        solution (ScpSolution): The scenario solution the intervals are anchored at.
        rcp (ConfidenceReport | None): Interval for the robust value, when a certificate is available.
        ccp (ConfidenceReport): Interval for the chance-constrained value, a priori or a posteriori.
    """

    name: str
    solution: ScpSolution
    rcp: ConfidenceReport | None = None
    ccp: ConfidenceReport


class UnionOutcome(BaseModel):
    """A solved union program with its aggregated intervals."""

    solution: SpSolution
    report: UnionReport | None = None
