"""API for checking project status."""
from scenario_bounds.web.api.monitoring.views import router


__all__ = ["router"]
