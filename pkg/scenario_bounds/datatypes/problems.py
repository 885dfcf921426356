from collections.abc import Callable, Sequence
from typing import Annotated, Any

import numpy as np

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, WithJsonSchema, field_validator, model_validator

from scenario_bounds.datatypes.arrays import Matrix, Vector, as_matrix
from scenario_bounds.datatypes.errors import (
    DimensionMismatchError,
    EmptyPolytopeError,
    InvalidParamsError,
    UnboundedPolytopeError,
)
from scenario_bounds.datatypes.lp import LinearProgram, LpStatus, RowTag
from scenario_bounds.services.lp.simplex import solve_lp


class Polytope(BaseModel):
    """
    A compact convex polytope ``{x : A x <= b, lower <= x <= upper}``.

    Construction certifies that the set is nonempty (one feasibility solve) and
    bounded (a minimisation and a maximisation of every coordinate).

    Attributes:
        dimension (int): The decision dimension n.
        A (Matrix): Row coefficients, one row per inequality.
        b (Vector): Row bounds.
        lower (Vector | None): Optional per-coordinate lower bounds, entries may be -inf.
        upper (Vector | None): Optional per-coordinate upper bounds, entries may be +inf.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension: int = Field(gt=0)
    A: Matrix
    b: Vector
    lower: Vector | None = None
    upper: Vector | None = None

    _bounds: tuple[np.ndarray, np.ndarray] = PrivateAttr()

    @model_validator(mode="before")
    @classmethod
    def _default_rows(cls, data: Any) -> Any:  # noqa: ANN401
        if isinstance(data, dict):
            n = int(data["dimension"])
            A = data.get("A")
            if A is None or as_matrix(A).size == 0:
                data = {**data, "A": np.zeros((0, n)), "b": np.zeros(0)}
        return data

    @model_validator(mode="after")
    def _certify(self) -> "Polytope":
        n = self.dimension
        if self.A.shape[1] != n:
            raise DimensionMismatchError("polytope rows", n, self.A.shape[1])
        if self.b.shape[0] != self.A.shape[0]:
            raise DimensionMismatchError("polytope bounds", self.A.shape[0], self.b.shape[0])
        lower = np.full(n, -np.inf) if self.lower is None else self.lower
        upper = np.full(n, np.inf) if self.upper is None else self.upper
        for name, bound in (("box lower bound", lower), ("box upper bound", upper)):
            if bound.shape[0] != n:
                raise DimensionMismatchError(name, n, bound.shape[0])
        if np.any(lower > upper):
            raise EmptyPolytopeError

        def _lp(c: np.ndarray) -> LinearProgram:
            return LinearProgram(c=c, A=self.A, b=self.b, lower=lower, upper=upper)

        if solve_lp(_lp(np.zeros(n))).status != LpStatus.OPTIMAL:
            raise EmptyPolytopeError
        lo = np.empty(n)
        hi = np.empty(n)
        for j in range(n):
            unit = np.zeros(n)
            unit[j] = 1.0
            low, high = solve_lp(_lp(unit)), solve_lp(_lp(-unit))
            if low.status == LpStatus.UNBOUNDED or high.status == LpStatus.UNBOUNDED:
                raise UnboundedPolytopeError(j)
            lo[j], hi[j] = low.value, -high.value
        self._bounds = (lo, hi)
        return self

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[tuple[Sequence[float], float]],
        dimension: int,
        box: tuple[Sequence[float], Sequence[float]] | None = None,
    ) -> "Polytope":
        """
        Build a polytope from ``(a, b)`` pairs meaning ``a.x <= b`` and an optional box.

        Args:
            rows: The inequality rows.
            dimension: The decision dimension.
            box: Optional ``(lower, upper)`` bounds.

        Returns:
            Polytope: The certified polytope.
        """
        A = [list(a) for a, _ in rows]
        b = [bound for _, bound in rows]
        lower, upper = box if box is not None else (None, None)
        return cls(dimension=dimension, A=A, b=b, lower=lower, upper=upper)

    @classmethod
    def box(cls, lower: Sequence[float], upper: Sequence[float]) -> "Polytope":
        """Build the axis-aligned box ``[lower, upper]``."""
        return cls(dimension=len(lower), lower=lower, upper=upper)

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """The certified finite bounding box of the polytope."""
        return self._bounds

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        """Whether ``x`` lies in the polytope up to ``tol``."""
        x = np.asarray(x, dtype=float)
        lo, hi = self._bounds
        inside_rows = bool(np.all(self.A @ x <= self.b + tol)) if self.A.shape[0] else True
        return inside_rows and bool(np.all(x >= lo - tol)) and bool(np.all(x <= hi + tol))

    def to_lp(
        self,
        c: np.ndarray,
        rows: np.ndarray | None = None,
        rhs: np.ndarray | None = None,
        tags: Sequence[RowTag] = (),
    ) -> LinearProgram:
        """
        Lower ``min c.x`` over this polytope, with extra rows placed before the domain rows.

        The certified bounding box becomes the program box, so the result has finite bounds.

        Args:
            c: The cost vector.
            rows: Extra row coefficients, e.g. scenario rows.
            rhs: Extra row bounds.
            tags: One tag per extra row.

        Returns:
            LinearProgram: The lowered program.
        """
        n = self.dimension
        extra = np.zeros((0, n)) if rows is None else np.asarray(rows, dtype=float).reshape(-1, n)
        extra_rhs = np.zeros(0) if rhs is None else np.asarray(rhs, dtype=float).reshape(-1)
        lo, hi = self._bounds
        return LinearProgram(
            c=c,
            A=np.vstack([extra, self.A]),
            b=np.concatenate([extra_rhs, self.b]),
            lower=lo,
            upper=hi,
            row_tags=tuple(tags) + (RowTag.DOMAIN,) * self.A.shape[0],
        )


class AffineConstraintOracle(BaseModel):
    """
    The constraint ``f(x, d) = a(d).x - b(d)``, affine in ``x`` by construction.

    ``eval_a`` and ``eval_b`` are evaluated on a batch of uncertainty points (first axis indexes
    the points) and return an ``(N, n)`` matrix and an ``(N,)`` vector respectively.
    ``sup_oracle`` optionally gives the closed-form worst case ``sup_d f(x, d)``.
    """

    model_config = ConfigDict(frozen=True)

    eval_a: Callable[[np.ndarray], np.ndarray]
    eval_b: Callable[[np.ndarray], np.ndarray]
    sup_oracle: Callable[[np.ndarray], float] | None = None
    name: str = "custom"

    def rows(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Evaluate the coefficient rows for a batch of points.

        Returns:
            tuple[np.ndarray, np.ndarray]: ``a(d_i)`` stacked as rows and ``b(d_i)``.
        """
        points = np.asarray(points, dtype=float)
        a = np.atleast_2d(np.asarray(self.eval_a(points), dtype=float))
        b = np.atleast_1d(np.asarray(self.eval_b(points), dtype=float))
        if points.shape[0] == 0:
            return a.reshape(0, a.shape[-1] if a.size else 0), b.reshape(0)
        return a, b

    def evaluate(self, x: np.ndarray, points: np.ndarray) -> np.ndarray:
        """Evaluate ``f(x, d_i)`` for every point of the batch."""
        a, b = self.rows(points)
        return a @ np.asarray(x, dtype=float) - b

    def worst_case(self, x: np.ndarray) -> float:
        """
        Evaluate ``sup_d f(x, d)`` with the closed-form oracle.

        Raises:
            InvalidParamsError: If the oracle has no closed-form worst case.
        """
        if self.sup_oracle is None:
            msg = f"Constraint '{self.name}' has no worst-case oracle"
            raise InvalidParamsError(msg)
        return float(self.sup_oracle(np.asarray(x, dtype=float)))


class Sampler(BaseModel):
    """
    A counter-based sampler of the uncertainty.

    ``draw(seed, indices)`` returns the points at the given 1-based indices; it is a pure function
    of its inputs, so a point depends only on ``(seed, index)``.
    """

    model_config = ConfigDict(frozen=True)

    draw: Callable[[int, np.ndarray], np.ndarray]
    description: str
    name: str = "custom"

    def draw_one(self, seed: int, index: int) -> np.ndarray:
        """Draw the single point at ``index`` of the stream keyed by ``seed``."""
        return np.asarray(self.draw(seed, np.array([index])), dtype=float)[0]


class UncertainProgram(BaseModel):
    """
    The data ``(c, X, f, D, P)`` shared by the robust, chance-constrained and scenario programs.

    Attributes:
        c (Vector): The cost vector.
        domain (Polytope): The compact decision set X.
        constraint (AffineConstraintOracle): The constraint f.
        sampler (Sampler): The uncertainty distribution.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    c: Vector
    domain: Polytope
    constraint: AffineConstraintOracle
    sampler: Sampler

    @model_validator(mode="after")
    def _check_dimensions(self) -> "UncertainProgram":
        n = self.domain.dimension
        if self.c.shape[0] != n:
            raise DimensionMismatchError("cost vector", n, self.c.shape[0])
        first_point = self.sampler.draw(0, np.array([1]))
        a, _ = self.constraint.rows(first_point)
        if a.shape[-1] != n:
            raise DimensionMismatchError("constraint coefficients", n, a.shape[-1])
        return self

    @property
    def n(self) -> int:
        """The decision dimension."""
        return self.domain.dimension


class ScenarioSet(BaseModel):
    """
    An ordered list of uncertainty points ``d_1..d_N`` with the seed that produced them.

    Attributes:
        points (np.ndarray): The points, first axis indexes the scenarios.
        seed (int): The sampler seed.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: Annotated[np.ndarray, WithJsonSchema({"type": "array", "items": {}})]
    seed: int = 0

    @field_validator("points", mode="before")
    @classmethod
    def _as_points(cls, value: Any) -> np.ndarray:  # noqa: ANN401
        points = np.array(value, dtype=float)
        if points.ndim == 0:
            points = points.reshape(1)
        points.setflags(write=False)
        return points

    @property
    def N(self) -> int:
        """The number of scenarios."""
        return int(self.points.shape[0])

    def prefix(self, k: int) -> "ScenarioSet":
        """The first ``k`` scenarios, identical to sampling ``k`` points with the same seed."""
        return ScenarioSet(points=self.points[:k], seed=self.seed)

    def permuted(self, seed: int) -> "ScenarioSet":
        """
        The same scenarios in a shuffled order.

        The result keeps the sampler seed but no longer regenerates from it; it is meant for
        order-invariance studies.
        """
        order = np.random.default_rng(seed).permutation(self.N)
        return ScenarioSet(points=self.points[order], seed=self.seed)
