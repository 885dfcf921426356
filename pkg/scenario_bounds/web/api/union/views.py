from typing import Annotated

from fastapi import Depends, HTTPException
from fastapi.routing import APIRouter
from loguru import logger
from pydantic import BaseModel, Field
from starlette.status import HTTP_400_BAD_REQUEST, HTTP_500_INTERNAL_SERVER_ERROR

from scenario_bounds.datatypes.outcomes import UnionOutcome
from scenario_bounds.services.metrics.dependencies import metrics_provider
from scenario_bounds.services.metrics.metrics import Metric, MetricsService
from scenario_bounds.services.problems.workflows import solve_union
from scenario_bounds.web.api import constants
from scenario_bounds.web.api.schemas import FamilyField


router = APIRouter()

metrics_service = Annotated[MetricsService, Depends(metrics_provider)]


class UnionRequest(BaseModel):
    """Union program request: the family, the scenarios and the confidence parameter of the report."""

    family: FamilyField
    n_scenarios: int = Field(ge=1)
    seed: int = 0
    beta: float | None = Field(default=None, gt=0.0, le=1.0)


@router.post(
    "/union/solve",
    tags=["union"],
    responses={
        200: {"description": constants.success200},
        400: {"description": constants.error400},
        422: {"description": constants.error422},
        500: {"description": constants.error500},
    },
)
def union_handler(request: UnionRequest, metrics: metrics_service) -> UnionOutcome:
    """Returns the best feasible member and, when ``beta`` is given, the aggregated intervals."""
    metrics.increment(Metric.COUNT_API_REQUESTS, {"route": "union"})
    try:
        return solve_union(request.family, request.n_scenarios, request.seed, request.beta)
    except ValueError as ve:
        raise HTTPException(HTTP_400_BAD_REQUEST, str(ve)) from ve
    except RuntimeError as re:
        logger.exception("Union solve failed")
        raise HTTPException(HTTP_500_INTERNAL_SERVER_ERROR, constants.error500) from re
