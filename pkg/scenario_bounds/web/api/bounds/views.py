from typing import Annotated

from fastapi import Depends, HTTPException
from fastapi.routing import APIRouter
from loguru import logger
from pydantic import BaseModel, Field
from starlette.status import HTTP_400_BAD_REQUEST, HTTP_500_INTERNAL_SERVER_ERROR

from scenario_bounds.datatypes.config import SlaterConfig, UlbConfig
from scenario_bounds.datatypes.outcomes import BoundsOutcome
from scenario_bounds.services.metrics.dependencies import metrics_provider
from scenario_bounds.services.metrics.metrics import Metric, MetricsService
from scenario_bounds.services.problems.workflows import problem_bounds
from scenario_bounds.web.api import constants
from scenario_bounds.web.api.schemas import ConfigField


router = APIRouter()

metrics_service = Annotated[MetricsService, Depends(metrics_provider)]


class BoundsRequest(BaseModel):
    """
    Confidence interval request.

    Attributes:
        problem (ConfigField): Inline problem configuration or the name of a built-in one.
        ulb (UlbConfig | None): Level-set bound, overriding the configured one.
        slater (SlaterConfig | None): Certificate, overriding the configured one.
        eps (float): Violation level.
        beta (float): Confidence parameter.
        n_scenarios (int): Number of scenarios.
        seed (int): Stream seed.
        posterior (bool): Use the a posteriori width for the chance-constrained interval.
    """

    problem: ConfigField
    ulb: UlbConfig | None = None
    slater: SlaterConfig | None = None
    eps: float = Field(ge=0.0, le=1.0)
    beta: float = Field(gt=0.0, le=1.0)
    n_scenarios: int = Field(ge=1)
    seed: int = 0
    posterior: bool = False


@router.post(
    "/bounds",
    tags=["bounds"],
    responses={
        200: {"description": constants.success200},
        400: {"description": constants.error400},
        422: {"description": constants.error422},
        500: {"description": constants.error500},
    },
)
def bounds_handler(request: BoundsRequest, metrics: metrics_service) -> BoundsOutcome:
    """Returns the robust and chance-constrained confidence intervals around the scenario value."""
    metrics.increment(Metric.COUNT_API_REQUESTS, {"route": "bounds"})
    try:
        return problem_bounds(
            request.problem,
            request.eps,
            request.beta,
            request.n_scenarios,
            request.seed,
            ulb=request.ulb,
            slater=request.slater,
            posterior=request.posterior,
        )
    except ValueError as ve:
        raise HTTPException(HTTP_400_BAD_REQUEST, str(ve)) from ve
    except RuntimeError as re:
        logger.exception("Interval computation failed")
        raise HTTPException(HTTP_500_INTERNAL_SERVER_ERROR, constants.error500) from re
