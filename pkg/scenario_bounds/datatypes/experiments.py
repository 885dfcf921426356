import numpy as np

from pydantic import BaseModel, Field, field_validator


class Example1Config(BaseModel):
    """
    Monte Carlo protocol for the planar benchmark.

    Attributes:
        N (int): Scenarios per experiment.
        M (int): Number of experiments.
        eps_grid (list[float]): Violation levels, each in ``(0, 1)``.
        seed (int): Master seed; experiment ``k`` uses a seed derived from it and ``k``.
    """

    N: int = Field(gt=0)
    M: int = Field(default=2000, ge=1)
    eps_grid: list[float] = Field(min_length=1)
    seed: int = 0

    @field_validator("eps_grid")
    @classmethod
    def _check_grid(cls, value: list[float]) -> list[float]:
        if any(not 0.0 < eps < 1.0 for eps in value):
            msg = "every grid level must lie in (0, 1)"
            raise ValueError(msg)
        return value

    @staticmethod
    def parse_grid(text: str) -> list[float]:
        """
        Parse ``"start:stop:count"`` into ``count`` evenly spaced levels, or a comma-separated list.

        Args:
            text (str): The grid description.

        Returns:
            list[float]: The levels.
        """
        if ":" in text:
            start, stop, count = text.split(":")
            return np.linspace(float(start), float(stop), int(count)).tolist()
        return [float(item) for item in text.split(",") if item.strip()]


class ExperimentRow(BaseModel):
    """
    One grid level of the benchmark: theoretical and empirical interval widths and coverage frequencies.

    Attributes:
        eps (float): Violation level.
        beta_star (float): Confidence parameter achieved by N scenarios.
        I_eps (float): A priori width.
        I_tilde (float): Empirical width for the robust value.
        I_tilde_eps (float): Empirical width for the chance-constrained value.
        I_N_eps (float): A posteriori width of the designated run.
        coverage_rcp (float): Fraction of experiments whose robust interval holds.
        coverage_ccp (float): Fraction of experiments whose a posteriori chance-constrained interval holds.
    """

    eps: float
    beta_star: float = Field(ge=0.0, le=1.0)
    I_eps: float = Field(ge=0.0)
    I_tilde: float = Field(ge=0.0)
    I_tilde_eps: float = Field(ge=0.0)
    I_N_eps: float = Field(ge=0.0)
    coverage_rcp: float = Field(ge=0.0, le=1.0)
    coverage_ccp: float = Field(ge=0.0, le=1.0)


class ExperimentRecord(BaseModel):
    """The outcome of one Monte Carlo experiment."""

    index: int
    seed: int
    value: float
    dual_l1: float


class Example1Result(BaseModel):
    """
    Rows of the benchmark plus the per-experiment records they were computed from.

    Attributes:
        config (Example1Config): The protocol.
        rows (list[ExperimentRow]): One row per grid level, in grid order.
        records (list[ExperimentRecord]): One record per experiment, in experiment order.
    """

    config: Example1Config
    rows: list[ExperimentRow]
    records: list[ExperimentRecord]


class CounterexampleReport(BaseModel):
    """
    Outcome of the scenario feasibility counterexample.

    Attributes:
        N (int): Scenarios per run.
        M (int): Number of runs.
        solutions (list[float]): The scenario optimizer of every run.
        max_error (float): Largest distance between the optimizer and the smallest scenario.
        robust_feasible_runs (int): Runs whose optimizer is feasible for every uncertainty, expected 0.
    """

    N: int
    M: int
    solutions: list[float]
    max_error: float
    robust_feasible_runs: int
