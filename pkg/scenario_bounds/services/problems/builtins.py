"""Built-in constraints and problems."""

from collections.abc import Callable, Sequence

import numpy as np

from scenario_bounds.datatypes.errors import UnknownBuiltinError
from scenario_bounds.datatypes.problems import AffineConstraintOracle, Polytope, Sampler, UncertainProgram
from scenario_bounds.services.sampling.samplers import uniform_interval


def example1_constraint() -> AffineConstraintOracle:
    """
    ``f(x, d) = cos(d) x_1 + sin(d) x_2 - 1`` on the plane, with worst case ``||x|| - 1`` over a full turn.
    """

    def eval_a(points: np.ndarray) -> np.ndarray:
        d = np.asarray(points, dtype=float).reshape(-1)
        return np.column_stack([np.cos(d), np.sin(d)])

    def eval_b(points: np.ndarray) -> np.ndarray:
        return np.ones(np.asarray(points).reshape(-1).shape[0])

    def sup_oracle(x: np.ndarray) -> float:
        return float(np.linalg.norm(x)) - 1.0

    return AffineConstraintOracle(eval_a=eval_a, eval_b=eval_b, sup_oracle=sup_oracle, name="example1")


def counterexample_constraint() -> AffineConstraintOracle:
    """``f(x, d) = x - d`` in one dimension, with worst case ``x`` over ``d`` in ``[0, 1]``."""

    def eval_a(points: np.ndarray) -> np.ndarray:
        return np.ones((np.asarray(points).reshape(-1).shape[0], 1))

    def eval_b(points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float).reshape(-1)

    def sup_oracle(x: np.ndarray) -> float:
        return float(np.asarray(x).reshape(-1)[0])

    return AffineConstraintOracle(eval_a=eval_a, eval_b=eval_b, sup_oracle=sup_oracle, name="counterexample")


def affine_table(knots: Sequence[float], a: Sequence[Sequence[float]], b: Sequence[float]) -> AffineConstraintOracle:
    """
    A constraint tabulated at scalar knots and interpolated linearly in ``d``.

    Outside the knot span the end rows hold. The worst case is the maximum over the knots, which is exact
    for a map that is piecewise affine in ``d``.

    Args:
        knots (Sequence[float]): Strictly increasing knots.
        a (Sequence[Sequence[float]]): Coefficient rows, one per knot.
        b (Sequence[float]): Bounds, one per knot.

    Returns:
        AffineConstraintOracle: The interpolated constraint.
    """
    table_d = np.asarray(knots, dtype=float)
    table_a = np.asarray(a, dtype=float).reshape(table_d.shape[0], -1)
    table_b = np.asarray(b, dtype=float)

    def eval_a(points: np.ndarray) -> np.ndarray:
        d = np.asarray(points, dtype=float).reshape(-1)
        return np.column_stack([np.interp(d, table_d, column) for column in table_a.T])

    def eval_b(points: np.ndarray) -> np.ndarray:
        return np.interp(np.asarray(points, dtype=float).reshape(-1), table_d, table_b)

    def sup_oracle(x: np.ndarray) -> float:
        return float((table_a @ np.asarray(x, dtype=float) - table_b).max())

    return AffineConstraintOracle(eval_a=eval_a, eval_b=eval_b, sup_oracle=sup_oracle, name="affine_table")


CONSTRAINTS: dict[str, Callable[[], AffineConstraintOracle]] = {
    "example1": example1_constraint,
    "counterexample": counterexample_constraint,
}

SAMPLERS: dict[str, Callable[[float, float], Sampler]] = {
    "uniform_interval": uniform_interval,
}


def builtin_constraint(name: str) -> AffineConstraintOracle:
    """
    Look up a built-in constraint by name.

    Raises:
        UnknownBuiltinError: If no constraint has that name.
    """
    if name not in CONSTRAINTS:
        raise UnknownBuiltinError("constraint", name)
    return CONSTRAINTS[name]()


def builtin_sampler(kind: str, lo: float, hi: float) -> Sampler:
    """
    Look up a built-in sampler by name.

    Raises:
        UnknownBuiltinError: If no sampler has that name.
    """
    if kind not in SAMPLERS:
        raise UnknownBuiltinError("sampler", kind)
    return SAMPLERS[kind](lo, hi)


def example1_program(upper: Sequence[float] = (1.0, 1.0)) -> UncertainProgram:
    """
    The planar benchmark: ``min -x_1 - x_2`` over the box ``[0, upper]`` subject to ``f(x, d) <= 0``
    with ``d`` uniform on a full turn.
    """
    return UncertainProgram(
        c=[-1.0, -1.0],
        domain=Polytope.box([0.0, 0.0], list(upper)),
        constraint=example1_constraint(),
        sampler=uniform_interval(0.0, 2.0 * np.pi),
    )


def counterexample_program() -> UncertainProgram:
    """``min -x`` over ``[-1, 1]`` subject to ``x <= d`` with ``d`` uniform on ``[0, 1]``."""
    return UncertainProgram(
        c=[-1.0],
        domain=Polytope.box([-1.0], [1.0]),
        constraint=counterexample_constraint(),
        sampler=uniform_interval(0.0, 1.0),
    )
