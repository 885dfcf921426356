from enum import Enum

from fastapi import APIRouter
from loguru import logger
from pydantic import BaseModel, Field

from scenario_bounds.services.problems.loader import broken_problems, list_problems


router = APIRouter()


class HealthStatus(str, Enum):
    """UP when every built-in configuration validates, DOWN otherwise."""

    UP = "UP"
    DOWN = "DOWN"


class Health(BaseModel):
    """Service status and the built-in problems requests may name."""

    status: HealthStatus
    problems: list[str] = Field(default_factory=list, description="Built-in configuration names")
    description: str | None = Field(default=None, description="Validation errors of broken configurations")


@router.get("/health", tags=["monitoring"], response_model_exclude_none=True)
def health_check() -> Health:
    """
    Checks the health of the application.

    Re-validates the built-in configurations on every call, so edits to the problems directory show up here.
    """
    broken = broken_problems()
    if broken:
        logger.warning(f"Broken built-in configurations: {sorted(broken)}")
        return Health(
            status=HealthStatus.DOWN,
            problems=[name for name in list_problems() if name not in broken],
            description="; ".join(f"{name}: {error}" for name, error in sorted(broken.items())),
        )
    return Health(status=HealthStatus.UP, problems=list_problems())
