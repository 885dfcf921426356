"""End-to-end operations on configured problems, shared by the command line and the HTTP API."""

from loguru import logger

from scenario_bounds.datatypes.bounds import IntervalKind
from scenario_bounds.datatypes.config import SlaterConfig, UlbConfig
from scenario_bounds.datatypes.errors import InvalidParamsError
from scenario_bounds.datatypes.outcomes import BoundsOutcome, SampleSizeOutcome, SolveOutcome, UnionOutcome
from scenario_bounds.services.bounds.intervals import aposteriori_interval, apriori_interval, ccp_report, rcp_report
from scenario_bounds.services.lp.ranges import value_range
from scenario_bounds.services.nonconvex.union import solve_sp, union_report
from scenario_bounds.services.problems.loader import (
    ConfigRef,
    build_certificate,
    build_level_set_bound,
    load_family,
    load_problem,
)
from scenario_bounds.services.sample_size.binomial import binomial_tail, sample_size_union
from scenario_bounds.services.sampling.scenarios import sample_scenarios
from scenario_bounds.services.scenario.solver import solve_scp
from scenario_bounds.services.scenario.tie_break import tie_break as tie_break_solve


def compute_sample_size(eps: float, beta: float, n: int, m: int = 1) -> SampleSizeOutcome:
    """
    Minimal sample size for ``m`` subprograms sharing the level ``eps``, with the tail it achieves.

    Args:
        eps (float): Violation level.
        beta (float): Confidence parameter.
        n (int): Decision dimension.
        m (int): Number of subprograms, 1 for a single convex program.

    Returns:
        SampleSizeOutcome: ``N`` and ``m * binomial_tail(N, n, eps)``.
    """
    if m < 1:
        msg = f"m must be at least 1, got {m}"
        raise InvalidParamsError(msg)
    N = sample_size_union([eps] * m, beta, n)
    return SampleSizeOutcome(N=N, tail=min(1.0, m * binomial_tail(N, n, eps)))


def solve_problem(
    ref: ConfigRef,
    n_scenarios: int,
    seed: int,
    gamma: float = 0.0,
    *,
    tie_break: bool = False,
) -> SolveOutcome:
    """
    Sample scenarios for a configured problem and solve its scenario program.

    Args:
        ref (ConfigRef): Inline configuration, file path or built-in name.
        n_scenarios (int): Number of scenarios.
        seed (int): Stream seed.
        gamma (float): Relaxation of the scenario rows.
        tie_break (bool): Also select the least-norm optimizer.

    Returns:
        SolveOutcome: The solution, and the second-stage point when requested and the program is optimal.
    """
    problem = load_problem(ref)
    scenarios = sample_scenarios(problem.program.sampler, n_scenarios, seed)
    solution = solve_scp(problem.program, scenarios, gamma)
    second = None
    if tie_break and solution.is_optimal and solution.value is not None:
        second = tie_break_solve(problem.program, scenarios, solution.value)
    elif tie_break:
        logger.warning(f"Skipping the tie-break stage of a {solution.status.value} program")
    return SolveOutcome(name=problem.name, n_scenarios=n_scenarios, seed=seed, solution=solution, tie_break=second)


def problem_bounds(  # noqa: PLR0913
    ref: ConfigRef,
    eps: float,
    beta: float,
    n_scenarios: int,
    seed: int,
    *,
    ulb: UlbConfig | None = None,
    slater: SlaterConfig | None = None,
    posterior: bool = False,
) -> BoundsOutcome:
    """
    Solve a configured problem and place the robust and chance-constrained intervals around its value.

    ``ulb`` and ``slater`` override the ones of the configuration. The robust interval needs a certificate;
    the chance-constrained one uses the a posteriori width when ``posterior`` is set.

    Args:
        ref (ConfigRef): Inline configuration, file path or built-in name.
        eps (float): Violation level.
        beta (float): Confidence parameter.
        n_scenarios (int): Number of scenarios.
        seed (int): Stream seed.
        ulb (UlbConfig | None): Level-set bound override.
        slater (SlaterConfig | None): Certificate override.
        posterior (bool): Use the dual norm of the solved program for the chance-constrained width.

    Returns:
        BoundsOutcome: The solution and the reports.

    Raises:
        InvalidParamsError: If no level-set bound is available, if the program is not optimal, or if an
            a priori interval is requested without a certificate.
    """
    problem = load_problem(ref)
    program = problem.program
    level_set = build_level_set_bound(ulb) if ulb is not None else problem.ulb
    if level_set is None:
        msg = f"problem '{problem.name}' has no level-set bound"
        raise InvalidParamsError(msg)
    certificate = build_certificate(program, slater) if slater is not None else problem.slater
    if certificate is None and not posterior:
        msg = f"problem '{problem.name}' has no Slater point or min-max flag for a priori intervals"
        raise InvalidParamsError(msg)

    solution = solve_scp(program, sample_scenarios(program.sampler, n_scenarios, seed))
    if not solution.is_optimal or solution.value is None:
        msg = f"scenario program is {solution.status.value}"
        raise InvalidParamsError(msg)
    lo, hi = value_range(program.c, program.domain)

    prior = apriori_interval(certificate.L_SP, level_set, eps, hi - lo) if certificate is not None else None
    rcp = rcp_report(solution.value, prior, eps, beta, n_scenarios, program.n) if prior is not None else None
    if posterior or prior is None:
        ccp_width, kind = aposteriori_interval(solution.dual_l1, level_set, eps, hi - lo), IntervalKind.CCP_A_POSTERIORI
    else:
        ccp_width, kind = prior, IntervalKind.CCP_A_PRIORI
    ccp = ccp_report(solution.value, ccp_width, eps, beta, n_scenarios, program.n, kind=kind)
    return BoundsOutcome(name=problem.name, solution=solution, rcp=rcp, ccp=ccp)


def solve_union(ref: ConfigRef, n_scenarios: int, seed: int, beta: float | None = None) -> UnionOutcome:
    """
    Solve a configured union program on shared scenarios.

    Args:
        ref (ConfigRef): Inline family configuration, file path or built-in name.
        n_scenarios (int): Number of scenarios.
        seed (int): Stream seed.
        beta (float | None): Confidence parameter; the union report is built when given and a member is feasible.

    Returns:
        UnionOutcome: The union solution and its report.
    """
    family = load_family(ref)
    scenarios = sample_scenarios(family.sampler, n_scenarios, seed)
    solution = solve_sp(family, scenarios)
    report = None
    if beta is not None and solution.value is not None:
        report = union_report(solution, family, beta, n_scenarios)
    return UnionOutcome(solution=solution, report=report)
