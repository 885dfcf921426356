from typing import Annotated

from fastapi import Depends, HTTPException
from fastapi.routing import APIRouter
from pydantic import BaseModel, Field
from starlette.status import HTTP_400_BAD_REQUEST

from scenario_bounds.datatypes.outcomes import SampleSizeOutcome
from scenario_bounds.services.metrics.dependencies import metrics_provider
from scenario_bounds.services.metrics.metrics import Metric, MetricsService
from scenario_bounds.services.problems.workflows import compute_sample_size
from scenario_bounds.web.api import constants


router = APIRouter()

metrics_service = Annotated[MetricsService, Depends(metrics_provider)]


class SampleSizeRequest(BaseModel):
    """
    Sample-size query.

    Attributes:
        eps (float): Violation level.
        beta (float): Confidence parameter.
        n (int): Decision dimension.
        m (int): Number of subprograms sharing the level.
    """

    eps: float = Field(ge=0.0, le=1.0)
    beta: float = Field(gt=0.0, le=1.0)
    n: int = Field(ge=1)
    m: int = Field(default=1, ge=1)


@router.post(
    "/sample-size",
    tags=["sample-size"],
    responses={
        200: {"description": constants.success200},
        400: {"description": constants.error400},
        422: {"description": constants.error422},
    },
)
def sample_size_handler(request: SampleSizeRequest, metrics: metrics_service) -> SampleSizeOutcome:
    """Returns the minimal number of scenarios and the tail value it achieves."""
    metrics.increment(Metric.COUNT_API_REQUESTS, {"route": "sample-size"})
    try:
        return compute_sample_size(request.eps, request.beta, request.n, request.m)
    except ValueError as ve:
        raise HTTPException(HTTP_400_BAD_REQUEST, str(ve)) from ve
