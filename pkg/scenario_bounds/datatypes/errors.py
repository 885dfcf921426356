class InvalidParamsError(ValueError):
    """
    Raised when an operation receives a parameter outside its domain.

    Args:
        param (str): Description of the offending parameter.
    """

    def __init__(self, param: str) -> None:
        super().__init__(f"{param}")


class DimensionMismatchError(ValueError):
    """Raised when the cost vector, the domain and the constraint oracle disagree on the decision dimension."""

    def __init__(self, what: str, expected: int, got: int) -> None:
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {got}")


class EmptyPolytopeError(ValueError):
    """Raised when a polytope has no feasible point."""

    def __init__(self) -> None:
        super().__init__("Polytope is empty: the feasibility solve found no point")


class UnboundedPolytopeError(ValueError):
    """
    Raised when a polytope is not bounded.

    Args:
        coordinate (int): The coordinate found to be unbounded.
    """

    def __init__(self, coordinate: int) -> None:
        super().__init__(f"Polytope is unbounded along coordinate {coordinate}")


class UnachievableSampleSizeError(ValueError):
    """Raised when no finite number of scenarios satisfies the binomial tail condition."""

    def __init__(self, eps: float, beta: float) -> None:
        super().__init__(f"Sample size unachievable for eps={eps}, beta={beta}")


class SolverStallError(RuntimeError):
    """
    Raised when the simplex method exceeds its pivot budget.

    Args:
        pivots (int): The number of pivots performed.
    """

    def __init__(self, pivots: int) -> None:
        super().__init__(f"Simplex stalled after {pivots} pivots")


class TieBreakError(RuntimeError):
    """Raised when the second stage is inconsistent with the first stage optimum."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Tie-break stage failed: {reason}")


class NotSlaterPointError(ValueError):
    """Raised when the candidate point is not strictly feasible for every uncertainty."""

    def __init__(self, sup_value: float) -> None:
        super().__init__(f"Not a Slater point: worst-case constraint value {sup_value} is not negative")


class InvalidUlbError(ValueError):
    """Raised when the parameters do not define a uniform level-set bound."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Invalid uniform level-set bound: {reason}")


class BinaryExpansionError(ValueError):
    """Raised when a binary expansion would enumerate too many subprograms."""

    def __init__(self, num_binaries: int, limit: int) -> None:
        super().__init__(f"Refusing to expand {num_binaries} binary variables (limit {limit})")


class UnknownBuiltinError(ValueError):
    """
    Raised when a configuration refers to a built-in that does not exist.

    Args:
        kind (str): The kind of built-in, e.g. constraint or sampler.
        name (str): The unknown name.
    """

    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f"Unknown built-in {kind} '{name}'")


class AnalyticRegimeError(ValueError):
    """Raised when a closed form is evaluated outside the regime where it holds."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)


class SharedSamplerError(ValueError):
    """Raised when the members of a subprogram family do not share one uncertainty sampler."""

    def __init__(self, index: int) -> None:
        super().__init__(f"Member {index} does not share the family sampler")
