"""Monte Carlo reproduction of the planar benchmark's confidence intervals."""

import time

from pathlib import Path

import numpy as np
import pandas as pd

from loguru import logger

from scenario_bounds.datatypes.experiments import Example1Config, Example1Result, ExperimentRecord, ExperimentRow
from scenario_bounds.services.bounds.intervals import aposteriori_interval, apriori_interval
from scenario_bounds.services.bounds.slater import slater_constant
from scenario_bounds.services.bounds.ulb import build_ulb
from scenario_bounds.services.experiments.analytic import (
    EXAMPLE1_FLOOR,
    EXAMPLE1_RCP_VALUE,
    analytic_example1_ccp,
    beta_star,
    empirical_interval,
)
from scenario_bounds.services.lp.ranges import value_range
from scenario_bounds.services.metrics.metrics import Metric, metrics_service
from scenario_bounds.services.problems.builtins import example1_program
from scenario_bounds.services.sampling.samplers import derive_seed
from scenario_bounds.services.sampling.scenarios import sample_scenarios
from scenario_bounds.services.scenario.solver import solve_scp
from scenario_bounds.services.workers import parallel_map

CSV_COLUMNS = [
    "eps",
    "beta_star",
    "I_eps",
    "I_tilde",
    "I_tilde_eps",
    "I_N_eps",
    "coverage_rcp",
    "coverage_ccp",
]

# tolerance on the sign of the value differences
_SIGN_TOL = 1e-9


def _ccp_value(eps: float) -> float:
    # beyond the closed-form regime the value sits at the box minimum
    return EXAMPLE1_FLOOR if eps >= 0.5 else analytic_example1_ccp(eps)  # noqa: PLR2004


def run_experiments(config: Example1Config) -> list[ExperimentRecord]:
    """
    Solve one scenario program per experiment, each on fresh scenarios.

    Args:
        config (Example1Config): The protocol.

    Returns:
        list[ExperimentRecord]: The scenario value and dual norm of every experiment, in experiment order.
    """
    program = example1_program()

    def experiment(k: int) -> ExperimentRecord:
        seed = derive_seed(config.seed, k)
        started = time.perf_counter()
        try:
            solution = solve_scp(program, sample_scenarios(program.sampler, config.N, seed))
        except Exception:
            logger.exception(f"Experiment {k} failed")
            raise
        if not solution.is_optimal or solution.value is None:
            msg = f"Experiment {k} returned {solution.status.value}"
            raise RuntimeError(msg)
        metrics_service.increment(Metric.COUNT_EXPERIMENTS)
        metrics_service.record(Metric.TIMER_EXPERIMENT_RUNS, None, time.perf_counter() - started)
        return ExperimentRecord(index=k, seed=seed, value=solution.value, dual_l1=solution.dual_l1)

    logger.info(f"Running {config.M} experiments with N={config.N}")
    return parallel_map(experiment, range(1, config.M + 1))


def run_example1(config: Example1Config, out: Path | None = None) -> Example1Result:
    """
    Compare theoretical and empirical confidence intervals of the planar benchmark on a grid of levels.

    For every level the row holds the achieved confidence ``beta*``, the a priori width, the empirical
    widths for the robust and chance-constrained values, the a posteriori width of the first experiment
    and the fraction of experiments whose intervals hold (the chance-constrained one with each experiment's
    own a posteriori width).

    Args:
        config (Example1Config): The protocol.
        out (Path | None): Where to write the rows as CSV.

    Returns:
        Example1Result: The rows and the experiment records.
    """
    program = example1_program()
    L_SP = slater_constant(program, np.zeros(2)).L_SP
    ulb = build_ulb(np.sqrt(2.0), 1.0 / np.pi, 1.0)
    lo, hi = value_range(program.c, program.domain)
    span = hi - lo

    records = run_experiments(config)
    values = np.array([record.value for record in records])
    duals = np.array([record.dual_l1 for record in records])
    rcp_diffs = np.maximum(EXAMPLE1_RCP_VALUE - values, 0.0)

    rows = []
    for eps in config.eps_grid:
        beta = beta_star(eps, config.N)
        width = apriori_interval(L_SP, ulb, eps, span).value
        ccp_diffs = values - _ccp_value(eps)
        covered = ccp_diffs >= -_SIGN_TOL
        posterior = np.array([aposteriori_interval(dual, ulb, eps, span).value for dual in duals])
        rows.append(
            ExperimentRow(
                eps=eps,
                beta_star=beta,
                I_eps=width,
                I_tilde=empirical_interval(rcp_diffs, beta),
                I_tilde_eps=empirical_interval(np.maximum(ccp_diffs, 0.0), beta),
                I_N_eps=posterior[0],
                coverage_rcp=float(np.mean(rcp_diffs <= width + _SIGN_TOL)),
                coverage_ccp=float(np.mean(covered & (ccp_diffs <= posterior + _SIGN_TOL))),
            ),
        )
    result = Example1Result(config=config, rows=rows, records=records)
    if out is not None:
        write_rows(result.rows, out)
    return result


def rows_frame(rows: list[ExperimentRow]) -> pd.DataFrame:
    """The rows as a data frame with the fixed column order."""
    return pd.DataFrame([row.model_dump() for row in rows], columns=CSV_COLUMNS)


def write_rows(rows: list[ExperimentRow], out: Path) -> None:
    """Write the rows as CSV with the fixed header."""
    out.parent.mkdir(parents=True, exist_ok=True)
    rows_frame(rows).to_csv(out, index=False)
    logger.info(f"Wrote {len(rows)} rows to {out}")
