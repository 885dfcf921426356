from pathlib import Path

import pytest

from fastapi import FastAPI
from fastapi.testclient import TestClient
from httpx import AsyncClient
from starlette import status

from scenario_bounds.services.problems.loader import broken_problems
from scenario_bounds.settings import settings


@pytest.mark.anyio()
async def test_health(client: AsyncClient, fastapi_app: FastAPI) -> None:
    """
    Checks the health endpoint.

    :param client: client for the app.
    :param fastapi_app: current FastAPI application.
    """
    url = fastapi_app.url_path_for("health_check")
    response = await client.get(url)
    assert response.status_code == status.HTTP_200_OK
    body = response.json()
    assert body["status"] == "UP"
    assert {"example1", "example1_tall", "example1_union", "counterexample", "tabulated"} <= set(body["problems"])
    assert "description" not in body


def test_health_reports_broken_configuration(
    fastapi_app: FastAPI,
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """A built-in file that fails validation turns the service DOWN and is named in the description."""
    (tmp_path / "good.json").write_text((settings.problems_dir / "counterexample.json").read_text())
    (tmp_path / "bad.json").write_text('{"c": [1.0]}')
    (tmp_path / "garbled.json").write_text("{not json")
    monkeypatch.setattr(settings, "problems_dir", tmp_path)

    assert set(broken_problems()) == {"bad", "garbled"}

    with TestClient(fastapi_app) as test_client:
        response = test_client.get(fastapi_app.url_path_for("health_check"))
    assert response.status_code == status.HTTP_200_OK
    body = response.json()
    assert body["status"] == "DOWN"
    assert body["problems"] == ["good"]
    assert body["description"].startswith("bad: ")
    assert "garbled: " in body["description"]


def test_shipped_configurations_validate() -> None:
    """Every configuration shipped with the package parses."""
    assert broken_problems() == {}
