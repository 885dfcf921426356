"""API for union-of-subprograms scenario programs."""
from scenario_bounds.web.api.union.views import router


__all__ = ["router"]
