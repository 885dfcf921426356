"""API for solving scenario programs."""
from scenario_bounds.web.api.scenario.views import router


__all__ = ["router"]
