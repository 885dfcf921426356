from fastapi import FastAPI
from fastapi.responses import UJSONResponse

from scenario_bounds.settings import settings
from scenario_bounds.web.api.router import api_router
from scenario_bounds.web.lifetime import lifespan


def get_app() -> FastAPI:
    """
    Build the solver service.

    Every endpoint lives under ``/api``; the interactive documentation is served at ``/api/docs``.

    :return: application.
    """
    app = FastAPI(
        title="scenario_bounds",
        description="Sample sizes, scenario programs and confidence intervals for robust and chance-constrained values",
        version=settings.version,
        lifespan=lifespan,
        docs_url="/api/docs",
        redoc_url="/api/redoc",
        openapi_url="/api/openapi.json",
        swagger_ui_parameters={"displayRequestDuration": True},
        default_response_class=UJSONResponse,
    )
    app.include_router(router=api_router, prefix="/api")
    return app
