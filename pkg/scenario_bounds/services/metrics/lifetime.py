from fastapi import FastAPI

from scenario_bounds.services.metrics.metrics import metrics_service


def init_metrics(app: FastAPI) -> None:
    """
    Initialize metrics for the given FastAPI app.

    The instruments are re-created so that a meter provider installed at startup is picked up.

    Args:
        app (FastAPI): The FastAPI instance to initialize metrics for.
    """
    metrics_service.setup_metrics()
    app.state.metrics_provider = metrics_service
