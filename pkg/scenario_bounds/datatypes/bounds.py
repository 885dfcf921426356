from enum import Enum

import numpy as np

from pydantic import BaseModel, ConfigDict, Field, model_validator

from scenario_bounds.datatypes.arrays import Vector


class Ulb(BaseModel):
    """
    A uniform level-set bound ``h(eps) = L_d * g^-1(eps)`` with ``g(r) = kappa * r^p``.

    ``L_d`` is a Lipschitz constant of ``d -> f(x, d)`` uniform in ``x`` and ``g`` lower-bounds the
    probability of a ball of radius ``r`` in the uncertainty set.

    Attributes:
        L_d (float): The Lipschitz constant.
        kappa (float): Scale of the ball-measure bound.
        p (float): Exponent of the ball-measure bound.
    """

    model_config = ConfigDict(frozen=True)

    L_d: float = Field(gt=0.0)
    kappa: float = Field(gt=0.0)
    p: float = Field(ge=1.0)

    def g(self, r: float | np.ndarray) -> float | np.ndarray:
        """The ball-measure lower bound ``kappa * r^p``."""
        return self.kappa * np.power(r, self.p)

    def g_inv(self, eps: float | np.ndarray) -> float | np.ndarray:
        """The inverse ``(eps / kappa)^(1/p)``."""
        return np.power(np.divide(eps, self.kappa), 1.0 / self.p)

    def h(self, eps: float | np.ndarray) -> float | np.ndarray:
        """The level-set bound ``L_d * g^-1(eps)``."""
        return self.L_d * self.g_inv(eps)


class SlaterCertificate(BaseModel):
    """
    The perturbation Lipschitz constant of a robust program.

    Attributes:
        x0 (Vector | None): The Slater point, absent for min-max certificates.
        margin (float | None): The worst-case constraint value at ``x0``, negative.
        L_SP (float): The constant ``(min c.x - c.x0) / margin``, or 1 for min-max programs.
        min_max (bool): Whether the constant comes from the min-max structure instead of a Slater point.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x0: Vector | None = None
    margin: float | None = Field(default=None, lt=0.0)
    L_SP: float = Field(ge=0.0)
    min_max: bool = False


class Branch(str, Enum):
    """Which term of the interval width minimum is active."""

    LIPSCHITZ = "lipschitz"
    RANGE = "range"


class IntervalKind(str, Enum):
    """The optimal value a confidence interval is about and when it is computed."""

    RCP_A_PRIORI = "RcpAPriori"
    CCP_A_PRIORI = "CcpAPriori"
    CCP_A_POSTERIORI = "CcpAPosteriori"


class IntervalWidth(BaseModel):
    """
    Width of a confidence interval with the active branch of the minimum.

    Attributes:
        value (float): The width.
        branch (Branch): The active term.
    """

    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0.0)
    branch: Branch


class ConfidenceReport(BaseModel):
    """
    A confidence interval for a robust or chance-constrained optimal value.

    Attributes:
        kind (IntervalKind): The interval kind.
        lo (float): Lower end.
        hi (float): Upper end.
        eps (float): Violation level.
        beta (float): Confidence parameter.
        n_required (int | None): Scenarios needed for the guarantee, None when unachievable.
        n_used (int): Scenarios actually used.
        j_star_n (float): The scenario optimal value the interval is anchored at.
        guaranteed (bool): Whether ``n_used >= n_required``.
        branch (Branch): The active term of the width.
        partial (bool): Whether some union member lacked the data for its interval.
        notes (list[str]): Free-form remarks, e.g. heterogeneous levels.
    """

    model_config = ConfigDict(frozen=True)

    kind: IntervalKind
    lo: float
    hi: float
    eps: float
    beta: float
    n_required: int | None
    n_used: int
    j_star_n: float
    guaranteed: bool
    branch: Branch
    partial: bool = False
    notes: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_interval(self) -> "ConfidenceReport":
        if self.lo > self.hi:
            msg = f"interval [{self.lo}, {self.hi}] is reversed"
            raise ValueError(msg)
        if self.guaranteed and (self.n_required is None or self.n_used < self.n_required):
            msg = "guarantee flag set without enough scenarios"
            raise ValueError(msg)
        return self

    @property
    def width(self) -> float:
        """Length of the interval."""
        return self.hi - self.lo


class UlbCheckRow(BaseModel):
    """One grid point of the empirical level-set bound check."""

    x: list[float]
    eps: float
    delta: float
    tail_probability: float
    slack: float
    violated: bool


class UlbCheckReport(BaseModel):
    """
    Result of the Monte Carlo validation of a level-set bound.

    Attributes:
        rows (list[UlbCheckRow]): One row per (grid point, level) pair.
        K (int): Monte Carlo draws per grid point.
    """

    rows: list[UlbCheckRow]
    K: int

    @property
    def violations(self) -> list[UlbCheckRow]:
        """The rows where the estimated tail probability falls below the level by more than the slack."""
        return [row for row in self.rows if row.violated]
