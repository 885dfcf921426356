from enum import Enum

import numpy as np

from pydantic import BaseModel, ConfigDict, Field, computed_field

from scenario_bounds.datatypes.arrays import Vector
from scenario_bounds.datatypes.lp import LpStatus
from scenario_bounds.datatypes.problems import ScenarioSet


class ScpSolution(BaseModel):
    """
    Solution of a (possibly gamma-relaxed) scenario program.

    Attributes:
        status (LpStatus): Status of the underlying linear program.
        x (Vector | None): The optimizer when optimal.
        value (float | None): The optimal value when optimal.
        scenario_duals (Vector | None): One multiplier per scenario row.
        gamma (float): Relaxation level of the scenario rows.
        scenarios (ScenarioSet | None): The scenarios the program was built from, not serialized.
        pivots (int): Simplex pivots spent.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: LpStatus
    x: Vector | None = None
    value: float | None = None
    scenario_duals: Vector | None = None
    gamma: float = Field(default=0.0, ge=0.0)
    scenarios: ScenarioSet | None = Field(default=None, exclude=True)
    pivots: int = 0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def dual_l1(self) -> float:
        """Sum of the scenario-row multipliers, zero unless optimal."""
        if self.scenario_duals is None:
            return 0.0
        return float(np.abs(self.scenario_duals).sum())

    @property
    def is_optimal(self) -> bool:
        """Whether the scenario program was solved to optimality."""
        return self.status == LpStatus.OPTIMAL


class TieBreakResult(BaseModel):
    """
    The least-norm point of the optimal face of a scenario program.

    Attributes:
        x (Vector): The selected optimizer.
        iterations (int): Conditional-gradient iterations.
        gap (float): Final duality gap.
        converged (bool): Whether the gap tolerance was met.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: Vector
    iterations: int
    gap: float
    converged: bool


class SpStatus(str, Enum):
    """Outcome of a union-of-subprograms solve."""

    OPTIMAL = "Optimal"
    INFEASIBLE = "SP infeasible"


class SpSolution(BaseModel):
    """
    Solution of the scenario union program: the best member among the feasible ones.

    Attributes:
        status (SpStatus): Optimal, or infeasible when no member is feasible.
        winner (int | None): Index of the selected member.
        per_member (list[ScpSolution]): One scenario solution per member, in member order.
        x (Vector | None): The winner's optimizer.
        value (float | None): The winner's optimal value.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: SpStatus
    winner: int | None = None
    per_member: list[ScpSolution]
    x: Vector | None = None
    value: float | None = None
