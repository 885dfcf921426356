from enum import Enum

from loguru import logger
from opentelemetry import metrics
from opentelemetry.metrics import Counter, Histogram

from scenario_bounds.settings import settings


class Metric(Enum):
    """Represents the instruments recorded by the solvers."""

    COUNT_LP_SOLVES = "lp_solves_counter"
    COUNT_PIVOTS = "simplex_pivots_counter"
    COUNT_SCENARIO_SOLVES = "scenario_solves_counter"
    COUNT_TIE_BREAK_ITERATIONS = "tie_break_iterations_counter"
    COUNT_EXPERIMENTS = "experiments_counter"
    COUNT_API_REQUESTS = "api_requests_counter"
    TIMER_EXPERIMENT_RUNS = "experiment_run_timer"


class MetricsService:
    """Represents a metrics service."""

    def __init__(self) -> None:
        self._instruments: dict[Metric, Counter | Histogram] = {}

    def setup_metrics(self) -> None:
        """Create the counters and histograms on the current meter provider."""
        meter = metrics.get_meter_provider().get_meter("scenario-bounds-metrics")
        for metric in Metric:
            if metric.name.startswith("TIMER"):
                self._instruments[metric] = meter.create_histogram(metric.value)
            else:
                self._instruments[metric] = meter.create_counter(metric.value)
        logger.debug(f"Configured {len(self._instruments)} metric instruments")

    def increment(self, metric: Metric, meta: dict[str, str] | None = None, value: float = 1) -> None:
        """
        Increment the given metrics counter by the specified value (default 1 if not provided).

        :param metric: The counter metric to be incremented.
        :param meta: Additional attributes for the metric increment.
        :param value: The value to increment the counter by. Defaults to 1.
        """
        counter = self._instruments.get(metric)
        if isinstance(counter, Counter):
            counter.add(value, {"environment": settings.environment, **(meta or {})})

    def record(self, metric: Metric, meta: dict[str, str] | None, value: float) -> None:
        """
        Record the given metrics histogram by the specified value.

        :param metric: The histogram metric to record the value.
        :param meta: Additional attributes for the histogram record.
        :param value: The value to record on the histogram.
        """
        histogram = self._instruments.get(metric)
        if isinstance(histogram, Histogram):
            histogram.record(value, {"environment": settings.environment, **(meta or {})})


metrics_service = MetricsService()
metrics_service.setup_metrics()
