from typing import Literal

from pydantic import BaseModel, Field, model_validator


class RowConfig(BaseModel):
    """An inequality ``a.x <= b``."""

    a: list[float]
    b: float


class BoxConfig(BaseModel):
    """Per-coordinate bounds; ``null`` entries stand for an infinite bound."""

    lower: list[float | None] | None = None
    upper: list[float | None] | None = None


class PolytopeConfig(BaseModel):
    """
    The decision polytope of a problem file.

    Attributes:
        rows (list[RowConfig]): Inequality rows.
        box (BoxConfig | None): Optional box.
    """

    rows: list[RowConfig] = Field(default_factory=list)
    box: BoxConfig | None = None


class AffineTableConfig(BaseModel):
    """
    A constraint tabulated at scalar knots ``d_j`` and interpolated linearly in between.

    Attributes:
        knots (list[float]): Strictly increasing knots.
        a (list[list[float]]): One coefficient row per knot.
        b (list[float]): One bound per knot.
    """

    kind: Literal["affine_table"] = "affine_table"
    knots: list[float] = Field(min_length=1)
    a: list[list[float]]
    b: list[float]

    @model_validator(mode="after")
    def _check_table(self) -> "AffineTableConfig":
        if len(self.a) != len(self.knots) or len(self.b) != len(self.knots):
            msg = "affine table needs one row and one bound per knot"
            raise ValueError(msg)
        if any(right <= left for left, right in zip(self.knots, self.knots[1:], strict=False)):
            msg = "affine table knots must be strictly increasing"
            raise ValueError(msg)
        return self


class SamplerConfig(BaseModel):
    """A named built-in sampler with its parameters."""

    kind: Literal["uniform_interval"] = "uniform_interval"
    lo: float
    hi: float


class SlaterConfig(BaseModel):
    """
    How to obtain the perturbation constant of a problem.

    Attributes:
        x0 (list[float] | None): A Slater point.
        sup_value (float | None): Its worst-case constraint value, when the constraint has no worst-case oracle.
        min_max (bool): Use the constant 1 of min-max programs instead of a Slater point.
    """

    x0: list[float] | None = None
    sup_value: float | None = None
    min_max: bool = False

    @model_validator(mode="after")
    def _check_source(self) -> "SlaterConfig":
        if self.x0 is None and not self.min_max:
            msg = "a Slater point or the min-max flag is required"
            raise ValueError(msg)
        return self


class UlbConfig(BaseModel):
    """Parameters of the level-set bound ``h(eps) = L_d * (eps / kappa)^(1/p)``."""

    L_d: float
    kappa: float
    p: float = 1.0


class ProblemConfig(BaseModel):
    """
    A problem file: the program data plus optional certificates for the confidence intervals.

    Attributes:
        name (str): Display name.
        n (int): Decision dimension.
        c (list[float]): Cost vector.
        polytope (PolytopeConfig): The decision polytope.
        constraint (str | AffineTableConfig): A built-in constraint name or a tabulated constraint.
        sampler (SamplerConfig): The uncertainty sampler.
        slater (SlaterConfig | None): Optional Slater data.
        ulb (UlbConfig | None): Optional level-set bound.
    """

    name: str = "problem"
    n: int = Field(gt=0)
    c: list[float]
    polytope: PolytopeConfig
    constraint: str | AffineTableConfig
    sampler: SamplerConfig
    slater: SlaterConfig | None = None
    ulb: UlbConfig | None = None


class FamilyConfig(BaseModel):
    """
    A union program file: member problems (inline or built-in names) and one level per member.

    Attributes:
        name (str): Display name.
        members (list[ProblemConfig | str]): The member problems.
        eps_k (list[float]): The members' violation levels.
    """

    name: str = "family"
    members: list[ProblemConfig | str] = Field(min_length=1)
    eps_k: list[float]

    @model_validator(mode="after")
    def _check_levels(self) -> "FamilyConfig":
        if len(self.eps_k) != len(self.members):
            msg = f"expected {len(self.members)} levels in eps_k, got {len(self.eps_k)}"
            raise ValueError(msg)
        return self
