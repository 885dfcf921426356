"""API for confidence intervals of optimal values."""
from scenario_bounds.web.api.bounds.views import router


__all__ = ["router"]
