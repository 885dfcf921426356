"""Union-of-subprograms scenario programs, binary expansion and their confidence intervals."""

from collections.abc import Callable
from itertools import product

import numpy as np

from loguru import logger

from scenario_bounds.datatypes.bounds import ConfidenceReport, IntervalKind, IntervalWidth, SlaterCertificate, Ulb
from scenario_bounds.datatypes.errors import BinaryExpansionError, InvalidParamsError, UnachievableSampleSizeError
from scenario_bounds.datatypes.nonconvex import SubprogramFamily, SubprogramMember, UnionReport
from scenario_bounds.datatypes.problems import AffineConstraintOracle, Polytope, Sampler, ScenarioSet, UncertainProgram
from scenario_bounds.datatypes.solutions import ScpSolution, SpSolution, SpStatus
from scenario_bounds.services.bounds.intervals import aposteriori_interval, apriori_interval, build_report
from scenario_bounds.services.lp.ranges import value_range
from scenario_bounds.services.sample_size.binomial import sample_size_union
from scenario_bounds.services.scenario.solver import solve_scp
from scenario_bounds.services.workers import parallel_map
from scenario_bounds.settings import settings


def solve_sp(family: SubprogramFamily, scenarios: ScenarioSet) -> SpSolution:
    """
    Solve every member's scenario program on the same scenarios and keep the best feasible one.

    Ties on the optimal value go to the member with the smallest index.

    Args:
        family (SubprogramFamily): The union program.
        scenarios (ScenarioSet): Scenarios shared by all members.

    Returns:
        SpSolution: The winner and every member's solution, or an infeasible status when no member is feasible.
    """
    per_member = parallel_map(lambda member: solve_scp(member.program, scenarios), family.members)
    winner: int | None = None
    for k, solution in enumerate(per_member):
        if not solution.is_optimal:
            logger.debug(f"Member {k} is {solution.status.value} on {scenarios.N} scenarios")
            continue
        if winner is None or float(solution.value) < float(per_member[winner].value):  # type: ignore[arg-type]
            winner = k
    if winner is None:
        logger.info(f"No member of the {family.m}-member union is feasible")
        return SpSolution(status=SpStatus.INFEASIBLE, per_member=per_member)
    best: ScpSolution = per_member[winner]
    return SpSolution(status=SpStatus.OPTIMAL, winner=winner, per_member=per_member, x=best.x, value=best.value)


def binary_expansion(  # noqa: PLR0913
    c: np.ndarray,
    domain: Polytope,
    oracle_for: Callable[[tuple[int, ...]], AffineConstraintOracle],
    sampler: Sampler,
    num_binaries: int,
    eps: float,
    slater_for: Callable[[UncertainProgram], SlaterCertificate | None] | None = None,
    ulb: Ulb | None = None,
) -> SubprogramFamily:
    """
    Expand a program with ``num_binaries`` binary variables into a union of ``2^num_binaries`` convex members.

    Members follow the lexicographic order of the assignment ``y``, read as a big-endian integer,
    and share the domain, the sampler and the violation level.

    Args:
        c (np.ndarray): The cost vector of the continuous decision.
        domain (Polytope): The continuous domain.
        oracle_for (Callable[[tuple[int, ...]], AffineConstraintOracle]): The constraint with ``y`` fixed.
        sampler (Sampler): The shared uncertainty sampler.
        num_binaries (int): Number of binary variables.
        eps (float): Violation level of every member.
        slater_for (Callable | None): Optional certificate builder applied to each member program.
        ulb (Ulb | None): Optional level-set bound shared by the members.

    Returns:
        SubprogramFamily: The expanded union.

    Raises:
        BinaryExpansionError: If the enumeration exceeds the configured limit.
    """
    if num_binaries < 0:
        msg = f"number of binary variables must be nonnegative, got {num_binaries}"
        raise InvalidParamsError(msg)
    if num_binaries > settings.max_binary_variables:
        raise BinaryExpansionError(num_binaries, settings.max_binary_variables)
    members = []
    for y in product((0, 1), repeat=num_binaries):
        program = UncertainProgram(c=c, domain=domain, constraint=oracle_for(y), sampler=sampler)
        members.append(
            SubprogramMember(
                program=program,
                eps=eps,
                slater=slater_for(program) if slater_for is not None else None,
                ulb=ulb,
                label="y=" + "".join(map(str, y)),
            ),
        )
    logger.debug(f"Expanded {num_binaries} binary variables into {len(members)} members")
    return SubprogramFamily(members=members)


def union_feasibility_n(family: SubprogramFamily, beta: float) -> int:
    """Scenarios needed for the union optimizer to be chance feasible, from the members' levels and the shared dimension."""
    return sample_size_union(family.eps_vec, beta, family.n)


def union_report(
    sp_solution: SpSolution,
    family: SubprogramFamily,
    beta: float,
    n_used: int,
    eps: float | None = None,
) -> UnionReport:
    """
    Aggregate the members' confidence intervals by their maximum width.

    Each feasible member contributes its a priori width (needs a certificate and a level-set bound) and its
    a posteriori width (needs a level-set bound). Members without the data are listed as missing and the
    reports are flagged as partial. Members whose scenario program is infeasible are skipped and listed
    separately; they do not make a report partial. Heterogeneous levels are evaluated
    member-wise and noted.

    Args:
        sp_solution (SpSolution): The solved union program.
        family (SubprogramFamily): The union program.
        beta (float): Confidence parameter.
        n_used (int): Scenarios used.
        eps (float | None): A common level overriding the members' own levels.

    Returns:
        UnionReport: The robust and chance-constrained intervals.
    """
    if sp_solution.status != SpStatus.OPTIMAL or sp_solution.value is None:
        msg = "union intervals need a feasible union solution"
        raise InvalidParamsError(msg)
    levels = [eps] * family.m if eps is not None else family.eps_vec
    heterogeneous = len(set(levels)) > 1
    notes = ["levels differ across members; each member uses its own level"] if heterogeneous else []
    if heterogeneous:
        logger.warning(f"Union members use heterogeneous levels {levels}")

    prior: list[IntervalWidth] = []
    posterior: list[IntervalWidth] = []
    missing: set[int] = set()
    infeasible: list[int] = []
    for k, (member, level) in enumerate(zip(family.members, levels, strict=True)):
        solution = sp_solution.per_member[k]
        if not solution.is_optimal:
            # no Slater point exists for a member whose scenario program is empty
            infeasible.append(k)
            continue
        if member.ulb is None:
            missing.add(k)
            continue
        lo, hi = value_range(member.program.c, member.program.domain)
        if member.slater is not None:
            prior.append(apriori_interval(member.slater.L_SP, member.ulb, level, hi - lo))
        else:
            missing.add(k)
        posterior.append(aposteriori_interval(solution.dual_l1, member.ulb, level, hi - lo))
    if infeasible:
        logger.info(f"Union members {infeasible} are infeasible on {n_used} scenarios and are skipped")
    if missing:
        logger.warning(f"Union report is partial: members {sorted(missing)} lack certificates")

    try:
        n_required: int | None = sample_size_union(levels, beta, family.n)
    except UnachievableSampleSizeError:
        n_required = None
    anchor = float(sp_solution.value)
    report_level = max(levels)

    def _aggregate(widths: list[IntervalWidth], kind: IntervalKind) -> ConfidenceReport | None:
        if not widths:
            return None
        widest = max(widths, key=lambda width: width.value)
        return build_report(
            kind,
            anchor,
            widest,
            report_level,
            beta,
            n_used,
            n_required,
            partial=bool(missing),
            notes=notes,
        )

    return UnionReport(
        rp=_aggregate(prior, IntervalKind.RCP_A_PRIORI),
        cp=_aggregate(prior, IntervalKind.CCP_A_PRIORI),
        cp_posterior=_aggregate(posterior, IntervalKind.CCP_A_POSTERIORI),
        n_required=n_required,
        missing_members=sorted(missing),
        infeasible_members=infeasible,
        heterogeneous_eps=heterogeneous,
    )
