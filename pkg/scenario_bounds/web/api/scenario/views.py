from typing import Annotated

from fastapi import Depends, HTTPException
from fastapi.routing import APIRouter
from loguru import logger
from pydantic import BaseModel, Field
from starlette.status import HTTP_400_BAD_REQUEST, HTTP_500_INTERNAL_SERVER_ERROR

from scenario_bounds.datatypes.outcomes import SolveOutcome
from scenario_bounds.services.metrics.dependencies import metrics_provider
from scenario_bounds.services.metrics.metrics import Metric, MetricsService
from scenario_bounds.services.problems.workflows import solve_problem
from scenario_bounds.web.api import constants
from scenario_bounds.web.api.schemas import ConfigField


router = APIRouter()

metrics_service = Annotated[MetricsService, Depends(metrics_provider)]


class SolveRequest(BaseModel):
    """
    Scenario program request.

    Attributes:
        problem (ConfigField): Inline problem configuration or the name of a built-in one.
        n_scenarios (int): Number of scenarios.
        seed (int): Stream seed.
        gamma (float): Relaxation of the scenario rows.
        tie_break (bool): Also return the least-norm optimizer.
    """

    problem: ConfigField
    n_scenarios: int = Field(ge=1)
    seed: int = 0
    gamma: float = Field(default=0.0, ge=0.0)
    tie_break: bool = False


@router.post(
    "/scenario/solve",
    tags=["scenario"],
    responses={
        200: {"description": constants.success200},
        400: {"description": constants.error400},
        422: {"description": constants.error422},
        500: {"description": constants.error500},
    },
)
def solve_handler(request: SolveRequest, metrics: metrics_service) -> SolveOutcome:
    """Returns the scenario optimal value, optimizer and dual norm."""
    metrics.increment(Metric.COUNT_API_REQUESTS, {"route": "scenario"})
    try:
        return solve_problem(
            request.problem,
            request.n_scenarios,
            request.seed,
            request.gamma,
            tie_break=request.tie_break,
        )
    except ValueError as ve:
        raise HTTPException(HTTP_400_BAD_REQUEST, str(ve)) from ve
    except RuntimeError as re:
        logger.exception("Scenario solve failed")
        raise HTTPException(HTTP_500_INTERNAL_SERVER_ERROR, constants.error500) from re
