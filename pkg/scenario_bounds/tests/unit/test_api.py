import numpy as np
import pytest

from fastapi import FastAPI
from fastapi.testclient import TestClient
from starlette import status


def test_sample_size(fastapi_app: FastAPI) -> None:
    """The two-dimensional requirement and its tail."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("sample_size_handler")
        response = test_client.post(url, json={"eps": 0.1, "beta": 0.01, "n": 2})
        assert response.status_code == status.HTTP_200_OK
        body = response.json()
        assert body["N"] == 64
        assert body["tail"] <= 0.01


def test_unachievable_sample_size(fastapi_app: FastAPI) -> None:
    """A zero level is a bad request, a level outside [0, 1] does not validate."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("sample_size_handler")
        response = test_client.post(url, json={"eps": 0.0, "beta": 0.01, "n": 2})
        assert response.status_code == status.HTTP_400_BAD_REQUEST
        assert "unachievable" in response.json()["detail"]
        response = test_client.post(url, json={"eps": 1.5, "beta": 0.01, "n": 2})
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY


def test_scenario_solve(fastapi_app: FastAPI) -> None:
    """A built-in problem is solved and its optimizer returned as a list."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("solve_handler")
        response = test_client.post(url, json={"problem": "counterexample", "n_scenarios": 10, "seed": 3})
        assert response.status_code == status.HTTP_200_OK
        body = response.json()
        assert body["name"] == "counterexample"
        assert body["solution"]["status"] == "Optimal"
        assert body["solution"]["dual_l1"] == pytest.approx(1.0)
        assert "scenarios" not in body["solution"]
        assert body["tie_break"] is None


def test_scenario_solve_inline_with_tie_break(fastapi_app: FastAPI) -> None:
    """Inline configurations are accepted and the second stage is returned on request."""
    problem = {
        "n": 2,
        "c": [-1.0, 0.0],
        "polytope": {"box": {"lower": [0.0, 0.0], "upper": [1.0, 1.0]}},
        "constraint": "example1",
        "sampler": {"kind": "uniform_interval", "lo": 0.0, "hi": 2.0 * np.pi},
    }
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("solve_handler")
        response = test_client.post(url, json={"problem": problem, "n_scenarios": 40, "tie_break": True})
        assert response.status_code == status.HTTP_200_OK
        np.testing.assert_allclose(response.json()["tie_break"]["x"], [1.0, 0.0], atol=1e-6)


def test_unknown_problem(fastapi_app: FastAPI) -> None:
    """Only built-in names are accepted as references."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("solve_handler")
        response = test_client.post(url, json={"problem": "/etc/passwd", "n_scenarios": 10})
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY


def test_bounds(fastapi_app: FastAPI) -> None:
    """Both intervals are anchored at the scenario value."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("bounds_handler")
        payload = {"problem": "example1", "eps": 0.1, "beta": 0.01, "n_scenarios": 64, "seed": 2}
        response = test_client.post(url, json=payload)
        assert response.status_code == status.HTTP_200_OK
        body = response.json()
        value = body["solution"]["value"]
        assert body["rcp"]["lo"] == pytest.approx(value)
        assert body["ccp"]["hi"] == pytest.approx(value)
        assert body["rcp"]["guaranteed"] is True
        assert body["ccp"]["kind"] == "CcpAPriori"


def test_bounds_without_level_set_bound(fastapi_app: FastAPI) -> None:
    """A problem without a level-set bound is a bad request unless one is supplied."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("bounds_handler")
        payload = {"problem": "counterexample", "eps": 0.1, "beta": 0.01, "n_scenarios": 20}
        response = test_client.post(url, json=payload)
        assert response.status_code == status.HTTP_400_BAD_REQUEST
        assert "level-set bound" in response.json()["detail"]

        payload |= {"ulb": {"L_d": 1.0, "kappa": 1.0}, "posterior": True}
        response = test_client.post(url, json=payload)
        assert response.status_code == status.HTTP_200_OK
        assert response.json()["rcp"] is None


def test_union(fastapi_app: FastAPI) -> None:
    """The built-in family is solved with its report."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("union_handler")
        response = test_client.post(url, json={"family": "example1_union", "n_scenarios": 80, "beta": 0.01})
        assert response.status_code == status.HTTP_200_OK
        body = response.json()
        assert body["solution"]["status"] == "Optimal"
        assert len(body["solution"]["per_member"]) == 2
        assert body["report"]["rp"]["lo"] == pytest.approx(body["solution"]["value"])
        assert body["report"]["missing_members"] == []


def test_union_members_are_builtin_names(fastapi_app: FastAPI) -> None:
    """Members of an inline family may only name built-in configurations."""
    with TestClient(fastapi_app) as test_client:
        url = fastapi_app.url_path_for("union_handler")
        family = {"members": ["example1", "/etc/passwd"], "eps_k": [0.1, 0.1]}
        response = test_client.post(url, json={"family": family, "n_scenarios": 20})
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY

        family["members"] = ["example1", "example1_tall"]
        response = test_client.post(url, json={"family": family, "n_scenarios": 20})
        assert response.status_code == status.HTTP_200_OK
        assert response.json()["report"] is None
