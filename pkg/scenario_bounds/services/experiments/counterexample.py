import numpy as np

from loguru import logger

from scenario_bounds.datatypes.errors import InvalidParamsError
from scenario_bounds.datatypes.experiments import CounterexampleReport
from scenario_bounds.services.problems.builtins import counterexample_program
from scenario_bounds.services.sampling.samplers import derive_seed
from scenario_bounds.services.sampling.scenarios import sample_scenarios
from scenario_bounds.services.scenario.solver import solve_scp
from scenario_bounds.services.workers import parallel_map


def run_counterexample(N: int, M: int, seed: int) -> CounterexampleReport:
    """
    Show that a scenario optimizer is almost never robustly feasible.

    For ``min -x`` over ``[-1, 1]`` subject to ``x <= d`` the scenario optimizer is the smallest scenario,
    which is positive with probability one, while only ``x <= 0`` satisfies every uncertainty.

    Args:
        N (int): Scenarios per run.
        M (int): Number of runs.
        seed (int): Master seed.

    Returns:
        CounterexampleReport: The optimizers, their distance to the smallest scenario and the robustly feasible count.
    """
    if M < 1:
        msg = f"M must be at least 1, got {M}"
        raise InvalidParamsError(msg)
    program = counterexample_program()

    def run(k: int) -> tuple[float, float]:
        scenarios = sample_scenarios(program.sampler, N, derive_seed(seed, k))
        solution = solve_scp(program, scenarios)
        if solution.x is None:
            msg = f"Run {k} returned {solution.status.value}"
            raise RuntimeError(msg)
        optimizer = float(solution.x[0])
        return optimizer, abs(optimizer - float(scenarios.points.min()))

    outcomes = parallel_map(run, range(1, M + 1))
    solutions = [optimizer for optimizer, _ in outcomes]
    feasible = sum(program.constraint.worst_case(np.array([x])) <= 0 for x in solutions)
    if feasible:
        logger.warning(f"{feasible} of {M} scenario optimizers are robustly feasible")
    return CounterexampleReport(
        N=N,
        M=M,
        solutions=solutions,
        max_error=max(error for _, error in outcomes),
        robust_feasible_runs=int(feasible),
    )
