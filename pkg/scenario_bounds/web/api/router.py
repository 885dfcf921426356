from fastapi.routing import APIRouter

from scenario_bounds.web.api import bounds, monitoring, sample_size, scenario, union


api_router = APIRouter()
api_router.include_router(monitoring.router)
api_router.include_router(sample_size.router)
api_router.include_router(scenario.router)
api_router.include_router(bounds.router)
api_router.include_router(union.router)
