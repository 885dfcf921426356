from pydantic import BaseModel, ConfigDict, Field, model_validator

from scenario_bounds.datatypes.bounds import ConfidenceReport, SlaterCertificate, Ulb
from scenario_bounds.datatypes.errors import DimensionMismatchError, SharedSamplerError
from scenario_bounds.datatypes.problems import Sampler, UncertainProgram


class SubprogramMember(BaseModel):
    """
    One convex subprogram of a union program.

    Attributes:
        program (UncertainProgram): The member's data, with its own domain and constraint.
        eps (float): The member's violation level.
        slater (SlaterCertificate | None): Perturbation certificate, needed for a priori intervals.
        ulb (Ulb | None): Level-set bound, needed for any interval.
        label (str): Display name, e.g. the binary assignment the member stands for.
    """

    model_config = ConfigDict(frozen=True)

    program: UncertainProgram
    eps: float = Field(gt=0.0, le=1.0)
    slater: SlaterCertificate | None = None
    ulb: Ulb | None = None
    label: str = ""


class SubprogramFamily(BaseModel):
    """
    A union of convex subprograms sharing one uncertainty sampler and one decision dimension.

    Attributes:
        members (list[SubprogramMember]): The subprograms, at least one.
    """

    model_config = ConfigDict(frozen=True)

    members: list[SubprogramMember] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_shared(self) -> "SubprogramFamily":
        first = self.members[0].program
        for k, member in enumerate(self.members[1:], start=1):
            if member.program.sampler != first.sampler:
                raise SharedSamplerError(k)
            if member.program.n != first.n:
                raise DimensionMismatchError(f"member {k} decision", first.n, member.program.n)
        return self

    @property
    def m(self) -> int:
        """Number of members."""
        return len(self.members)

    @property
    def n(self) -> int:
        """The shared decision dimension."""
        return self.members[0].program.n

    @property
    def sampler(self) -> Sampler:
        """The shared sampler."""
        return self.members[0].program.sampler

    @property
    def eps_vec(self) -> list[float]:
        """The members' violation levels."""
        return [member.eps for member in self.members]


class UnionReport(BaseModel):
    """
    Aggregated confidence intervals of a union program.

    Attributes:
        rp (ConfidenceReport | None): A priori interval for the robust union value.
        cp (ConfidenceReport | None): A priori interval for the chance-constrained union value.
        cp_posterior (ConfidenceReport | None): A posteriori interval for the chance-constrained union value.
        n_required (int | None): Scenarios needed by the union feasibility bound.
        missing_members (list[int]): Feasible members left out for lack of certificates or a level-set bound.
        infeasible_members (list[int]): Members whose scenario program is infeasible, skipped.
        heterogeneous_eps (bool): Whether members use different violation levels.
    """

    rp: ConfidenceReport | None = None
    cp: ConfidenceReport | None = None
    cp_posterior: ConfidenceReport | None = None
    n_required: int | None
    missing_members: list[int] = Field(default_factory=list)
    infeasible_members: list[int] = Field(default_factory=list)
    heterogeneous_eps: bool = False
