import logging

from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastapi import FastAPI
from loguru import logger
from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
from opentelemetry.instrumentation.fastapi import FastAPIInstrumentor
from opentelemetry.instrumentation.logging import LoggingInstrumentor
from opentelemetry.sdk.resources import DEPLOYMENT_ENVIRONMENT, SERVICE_NAME, TELEMETRY_SDK_LANGUAGE, Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor
from opentelemetry.trace import set_tracer_provider

from scenario_bounds.services.metrics.lifetime import init_metrics
from scenario_bounds.services.problems.loader import broken_problems, list_problems
from scenario_bounds.settings import settings


def _untraced_paths(app: FastAPI) -> str:
    # health probes and the documentation pages
    paths = [app.url_path_for("health_check")]
    paths += [url for url in (app.openapi_url, app.docs_url, app.redoc_url) if url]
    return ",".join(paths)


def instrument(app: FastAPI) -> bool:  # pragma: no cover
    """
    Export request traces of the solver endpoints to the configured OTLP collector.

    :param app: current application.
    :return: whether tracing was installed.
    """
    if not settings.opentelemetry_endpoint:
        return False

    resource = Resource(
        attributes={
            SERVICE_NAME: "scenario_bounds",
            TELEMETRY_SDK_LANGUAGE: "python",
            DEPLOYMENT_ENVIRONMENT: settings.environment,
        },
    )
    tracer_provider = TracerProvider(resource=resource)
    exporter = OTLPSpanExporter(endpoint=settings.opentelemetry_endpoint, insecure=True)
    tracer_provider.add_span_processor(BatchSpanProcessor(exporter))

    FastAPIInstrumentor().instrument_app(app, tracer_provider=tracer_provider, excluded_urls=_untraced_paths(app))
    LoggingInstrumentor().instrument(
        tracer_provider=tracer_provider,
        set_logging_format=True,
        log_level=logging.getLevelName(settings.log_level.value),
    )
    set_tracer_provider(tracer_provider=tracer_provider)
    logger.info(f"Tracing to {settings.opentelemetry_endpoint}")
    return True


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncIterator[None]:
    """
    Startup and shutdown of the solver service.

    On startup the metrics service is stored in the application state, tracing is installed when an
    endpoint is configured and the built-in problems are validated once so a broken file is reported
    in the log before the first request names it.

    :param app: the fastAPI application.
    :yield: while the application serves requests.
    """
    app.middleware_stack = None
    traced = instrument(app)
    init_metrics(app)
    app.middleware_stack = app.build_middleware_stack()

    broken = broken_problems()
    for name, error in sorted(broken.items()):
        logger.error(f"Built-in problem {name} is invalid: {error}")
    logger.info(f"Serving built-in problems {[name for name in list_problems() if name not in broken]}")

    yield

    if traced:  # pragma: no cover
        FastAPIInstrumentor().uninstrument_app(app)
