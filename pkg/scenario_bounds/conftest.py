from collections.abc import AsyncGenerator
from pathlib import Path

import numpy as np
import pytest

from fastapi import FastAPI
from httpx import AsyncClient

from scenario_bounds.datatypes.problems import AffineConstraintOracle, Polytope, UncertainProgram
from scenario_bounds.services.problems.builtins import counterexample_program, example1_program
from scenario_bounds.services.sampling.samplers import uniform_interval
from scenario_bounds.web.application import get_app


@pytest.fixture(scope="session")
def anyio_backend() -> str:
    """
    Backend for anyio pytest plugin.

    :return: backend name.
    """
    return "asyncio"


@pytest.fixture()
def fastapi_app() -> FastAPI:
    """
    Fixture for creating FastAPI app.

    :return: fastapi app.
    """
    return get_app()


@pytest.fixture()
async def client(
    fastapi_app: FastAPI,
) -> AsyncGenerator[AsyncClient, None]:
    """
    Fixture that creates client for requesting server.

    :param fastapi_app: the application.
    :yield: client for the app.
    """
    async with AsyncClient(app=fastapi_app, base_url="http://test") as ac:
        yield ac


@pytest.fixture(scope="session")
def data_dir() -> Path:
    """Directory of the test configuration files."""
    return Path(__file__).parent / "tests" / "data"


@pytest.fixture(scope="session")
def example1() -> UncertainProgram:
    """The planar benchmark on the unit box."""
    return example1_program()


@pytest.fixture(scope="session")
def counterexample() -> UncertainProgram:
    """The one-dimensional feasibility counterexample."""
    return counterexample_program()


@pytest.fixture(scope="session")
def infeasible_program() -> UncertainProgram:
    """A program whose every scenario demands ``x >= d + 2`` on ``[-1, 1]``."""
    constraint = AffineConstraintOracle(
        eval_a=lambda points: -np.ones((np.asarray(points).reshape(-1).shape[0], 1)),
        eval_b=lambda points: -(np.asarray(points, dtype=float).reshape(-1) + 2.0),
        name="unreachable",
    )
    return UncertainProgram(
        c=[1.0],
        domain=Polytope.box([-1.0], [1.0]),
        constraint=constraint,
        sampler=uniform_interval(0.0, 1.0),
    )
