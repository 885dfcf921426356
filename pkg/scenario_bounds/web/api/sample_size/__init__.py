"""API for scenario sample sizes."""
from scenario_bounds.web.api.sample_size.views import router


__all__ = ["router"]
