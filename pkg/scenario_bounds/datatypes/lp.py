from enum import Enum

import numpy as np

from pydantic import BaseModel, ConfigDict, Field, model_validator

from scenario_bounds.datatypes.arrays import Matrix, Vector, as_matrix, as_vector
from scenario_bounds.datatypes.errors import DimensionMismatchError


class RowTag(str, Enum):
    """Labels the origin of a constraint row of a linear program."""

    SCENARIO = "scenario"
    DOMAIN = "domain"
    OBJECTIVE_CUT = "objective_cut"


class LpStatus(str, Enum):
    """Outcome of a linear program solve."""

    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


class LinearProgram(BaseModel):
    """
    A linear program ``min c.x`` subject to ``A x <= b`` and ``lower <= x <= upper``.

    Box entries may be infinite; rows are tagged so that multipliers can be split
    between scenario rows and domain rows.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    c: Vector
    A: Matrix
    b: Vector
    lower: Vector
    upper: Vector
    row_tags: tuple[RowTag, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _fill_defaults(cls, data: dict) -> dict:
        if not isinstance(data, dict):
            return data
        c = as_vector(data["c"])
        n = c.shape[0]
        A = as_matrix(data.get("A", np.zeros((0, n))))
        if A.shape[0] == 0:
            A = as_matrix(np.zeros((0, n)))
        data = {**data, "c": c, "A": A}
        data.setdefault("b", np.zeros(0))
        data.setdefault("lower", np.full(n, -np.inf))
        data.setdefault("upper", np.full(n, np.inf))
        if not data.get("row_tags"):
            data["row_tags"] = (RowTag.DOMAIN,) * A.shape[0]
        return data

    @model_validator(mode="after")
    def _check_dimensions(self) -> "LinearProgram":
        n = self.c.shape[0]
        if self.A.shape[1] != n:
            raise DimensionMismatchError("constraint matrix columns", n, self.A.shape[1])
        m = self.A.shape[0]
        if self.b.shape[0] != m:
            raise DimensionMismatchError("right-hand side", m, self.b.shape[0])
        if len(self.row_tags) != m:
            raise DimensionMismatchError("row tags", m, len(self.row_tags))
        for name, bound in (("lower bound", self.lower), ("upper bound", self.upper)):
            if bound.shape[0] != n:
                raise DimensionMismatchError(name, n, bound.shape[0])
        if np.any(self.lower > self.upper):
            msg = "lower bound exceeds upper bound"
            raise ValueError(msg)
        return self

    @property
    def n(self) -> int:
        """Number of decision variables."""
        return int(self.c.shape[0])

    @property
    def m(self) -> int:
        """Number of inequality rows (the box excluded)."""
        return int(self.A.shape[0])


class LpResult(BaseModel):
    """
    Result of a simplex solve.

    Attributes:
        status (LpStatus): Optimal, Infeasible or Unbounded.
        x (Vector | None): The optimizer when optimal.
        value (float | None): The optimal value ``c.x`` when optimal.
        duals (Vector | None): Nonnegative multiplier per row, zero for inactive rows.
        lower_duals (Vector | None): Multipliers of the active lower box faces.
        upper_duals (Vector | None): Multipliers of the active upper box faces.
        row_tags (tuple[RowTag, ...]): The tags of the solved program's rows.
        pivots (int): Number of simplex pivots over both phases.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: LpStatus
    x: Vector | None = None
    value: float | None = None
    duals: Vector | None = None
    lower_duals: Vector | None = None
    upper_duals: Vector | None = None
    row_tags: tuple[RowTag, ...] = ()
    pivots: int = Field(default=0, ge=0)

    def duals_for(self, tag: RowTag) -> np.ndarray:
        """
        Returns the multipliers of the rows carrying the given tag, in row order.

        Args:
            tag (RowTag): The row tag to select.

        Returns:
            np.ndarray: The selected multipliers (empty when not optimal).
        """
        if self.duals is None:
            return np.zeros(0)
        mask = np.array([t == tag for t in self.row_tags], dtype=bool)
        return self.duals[mask] if mask.size else np.zeros(0)
