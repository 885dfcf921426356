from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from scenario_bounds.datatypes.errors import AnalyticRegimeError, InvalidParamsError
from scenario_bounds.datatypes.experiments import Example1Config
from scenario_bounds.services.experiments.analytic import (
    EXAMPLE1_RCP_VALUE,
    analytic_example1_ccp,
    analytic_example1_rcp,
    beta_star,
    empirical_interval,
)
from scenario_bounds.services.experiments.counterexample import run_counterexample
from scenario_bounds.services.experiments.example1 import CSV_COLUMNS, run_example1
from scenario_bounds.services.sample_size.binomial import binomial_tail

GRID_SIZE = 1_000_000


@pytest.fixture(scope="module")
def diagonal_gains() -> np.ndarray:
    """``cos(d) + sin(d)`` on a fine midpoint grid of the full turn, in decreasing order."""
    d = 2.0 * np.pi * (np.arange(GRID_SIZE) + 0.5) / GRID_SIZE
    return np.sort(np.cos(d) + np.sin(d))[::-1]


@pytest.mark.parametrize("gamma", [0.0, 0.1, 0.25, 0.4, 1.0])
def test_robust_closed_form(gamma: float, diagonal_gains: np.ndarray) -> None:
    """The largest feasible point of the diagonal against every grid constraint."""
    t = (1.0 + gamma) / diagonal_gains[0]
    assert analytic_example1_rcp(gamma) == pytest.approx(max(-2.0 * t, -2.0), abs=1e-4)


@pytest.mark.parametrize("eps", [0.0, 0.05, 0.1, 0.2, 0.3, 0.45])
def test_chance_closed_form(eps: float, diagonal_gains: np.ndarray) -> None:
    """The largest point of the diagonal violated on at most a fraction eps of the grid."""
    t = 1.0 / diagonal_gains[int(np.floor(eps * GRID_SIZE))]
    assert analytic_example1_ccp(eps) == pytest.approx(max(-2.0 * t, -2.0), abs=1e-4)


def test_closed_form_domains() -> None:
    """The chance-constrained closed form stops at one half."""
    with pytest.raises(AnalyticRegimeError):
        analytic_example1_ccp(0.5)
    with pytest.raises(InvalidParamsError):
        analytic_example1_ccp(-0.1)
    with pytest.raises(InvalidParamsError):
        analytic_example1_rcp(-0.1)
    assert analytic_example1_rcp(0.0) == EXAMPLE1_RCP_VALUE


def test_closed_forms_respect_the_perturbation_bounds() -> None:
    """Value gaps stay within the Lipschitz widths of the benchmark (L_SP = 2)."""
    for eps in np.linspace(0.01, 0.49, 49):
        gap = EXAMPLE1_RCP_VALUE - analytic_example1_ccp(eps)
        assert 0.0 <= gap <= min(2.0 * np.sqrt(2.0) * np.pi * eps, 2.0) + 1e-12
    for gamma in np.linspace(0.0, 1.0, 21):
        assert EXAMPLE1_RCP_VALUE - analytic_example1_rcp(gamma) <= 2.0 * gamma + 1e-12


@pytest.mark.parametrize("N", [10, 50, 200])
@pytest.mark.parametrize("eps", [0.01, 0.1, 0.4])
def test_beta_star_is_the_two_dimensional_tail(N: int, eps: float) -> None:
    """The closed form agrees with the general binomial tail for n = 2."""
    assert beta_star(eps, N) == pytest.approx(binomial_tail(N, 2, eps), abs=1e-12)


def test_empirical_interval() -> None:
    """Order statistics of the differences, with the documented edge cases."""
    assert empirical_interval(np.arange(10) / 10, 0.25) == pytest.approx(0.7)
    assert empirical_interval(np.arange(10) / 10, 0.0) == pytest.approx(0.9)
    assert empirical_interval([0.3, 0.5], 1.0) == 0.0
    assert empirical_interval([-1e-10, 0.5], 0.5) == 0.0
    assert empirical_interval([0.1, np.inf], 0.5) == pytest.approx(0.1)
    assert empirical_interval([0.1, np.inf], 0.25) == np.inf
    with pytest.raises(InvalidParamsError):
        empirical_interval([-0.1, 0.2], 0.1)
    with pytest.raises(InvalidParamsError):
        empirical_interval([], 0.1)


@pytest.mark.parametrize("N", [5, 50])
def test_counterexample_optimizers_are_never_robust(N: int) -> None:
    """Every optimizer is the smallest scenario, which is positive, so none is robustly feasible."""
    report = run_counterexample(N, 1000, seed=17)
    assert report.M == 1000
    assert len(report.solutions) == 1000
    assert report.max_error <= 1e-9
    assert report.robust_feasible_runs == 0
    assert min(report.solutions) > 0.0


def test_counterexample_needs_runs() -> None:
    """At least one run is required."""
    with pytest.raises(InvalidParamsError):
        run_counterexample(5, 0, seed=0)


def test_example1_rows_and_csv(tmp_path: Path) -> None:
    """A small run writes one row per level with the fixed header."""
    config = Example1Config(N=20, M=50, eps_grid=[0.05, 0.2, 0.6], seed=3)
    out = tmp_path / "rows" / "example1.csv"
    result = run_example1(config, out)

    frame = pd.read_csv(out)
    assert list(frame.columns) == CSV_COLUMNS
    assert frame["eps"].tolist() == pytest.approx([0.05, 0.2, 0.6])
    assert len(result.records) == 50
    assert len({record.seed for record in result.records}) == 50
    assert all(record.value <= EXAMPLE1_RCP_VALUE + 1e-9 for record in result.records)

    last = result.rows[-1]
    assert last.I_eps == 2.0
    # every experiment sits above the floor
    assert last.coverage_ccp == 1.0
    assert [row.beta_star for row in result.rows] == [beta_star(eps, 20) for eps in config.eps_grid]


def test_example1_is_reproducible() -> None:
    """The same master seed gives the same experiments."""
    config = Example1Config(N=6, M=20, eps_grid=[0.1], seed=9)
    first, second = run_example1(config), run_example1(config)
    assert [r.value for r in first.records] == [r.value for r in second.records]
    assert first.rows == second.rows


def test_grid_parsing() -> None:
    """Ranges and lists are both accepted, levels outside (0, 1) are not."""
    assert Example1Config.parse_grid("0.1:0.3:3") == pytest.approx([0.1, 0.2, 0.3])
    assert Example1Config.parse_grid("0.05,0.2") == [0.05, 0.2]
    with pytest.raises(ValueError, match="grid level"):
        Example1Config(N=5, eps_grid=[0.0])


def test_chance_constrained_width_clamps_infeasible_experiments() -> None:
    """Experiments whose value falls below the chance-constrained value count as zero width, never as infinite."""
    config = Example1Config(N=6, M=50, eps_grid=[0.1], seed=3)
    result = run_example1(config)
    values = np.array([record.value for record in result.records])
    diffs = values - analytic_example1_ccp(0.1)
    assert np.any(diffs < -1e-6)

    row = result.rows[0]
    assert np.isfinite(row.I_tilde_eps)
    assert row.I_tilde_eps == empirical_interval(np.maximum(diffs, 0.0), beta_star(0.1, 6))


@pytest.mark.slow()
def test_empirical_widths_are_contained_in_the_theoretical_ones() -> None:
    """At full scale the empirical widths sit inside the a priori width and both coverages meet 1 - beta*."""
    config = Example1Config(N=60, M=2000, eps_grid=np.linspace(0.02, 0.5, 25).tolist(), seed=1)
    result = run_example1(config)
    assert len(result.rows) == 25
    for row in result.rows:
        assert row.I_tilde <= row.I_eps + 1e-9
        assert row.I_tilde_eps <= row.I_eps + 1e-9
        slack = 3.0 * np.sqrt(row.beta_star * (1.0 - row.beta_star) / config.M)
        assert row.coverage_rcp >= 1.0 - row.beta_star - slack
        assert row.coverage_ccp >= 1.0 - row.beta_star - slack
