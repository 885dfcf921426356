from itertools import combinations

import numpy as np
import pytest

from scenario_bounds.datatypes.errors import SolverStallError
from scenario_bounds.datatypes.lp import LinearProgram, LpStatus, RowTag
from scenario_bounds.services.lp.simplex import solve_lp
from scenario_bounds.settings import settings


def _vertex_oracle(lp: LinearProgram) -> float:
    """Minimum of ``c.x`` over the vertices of ``{A x <= b, lower <= x <= upper}``, by enumeration."""
    n = lp.n
    G = np.vstack([lp.A, -np.eye(n), np.eye(n)])
    h = np.concatenate([lp.b, -lp.lower, lp.upper])
    subsets = np.array(list(combinations(range(G.shape[0]), n)))
    systems = G[subsets]
    regular = np.abs(np.linalg.det(systems)) > 1e-9
    points = np.linalg.solve(systems[regular], h[subsets[regular]][..., None])[..., 0]
    feasible = np.all(points @ G.T <= h + 1e-9, axis=1)
    return float((points[feasible] @ lp.c).min())


def _random_lp(rng: np.random.Generator) -> LinearProgram:
    n = int(rng.integers(1, 5))
    m = int(rng.integers(0, 9))
    lower = -rng.uniform(0.5, 3.0, n)
    upper = rng.uniform(0.5, 3.0, n)
    interior = rng.uniform(lower, upper)
    A = rng.normal(size=(m, n))
    b = A @ interior + rng.uniform(0.0, 1.0, m)
    return LinearProgram(c=rng.normal(size=n), A=A, b=b, lower=lower, upper=upper)


def test_random_programs_match_vertex_enumeration() -> None:
    """Optimal values agree with the vertex oracle and the multipliers certify optimality."""
    rng = np.random.default_rng(20240611)
    for _ in range(500):
        lp = _random_lp(rng)
        result = solve_lp(lp)
        assert result.status == LpStatus.OPTIMAL
        assert result.value == pytest.approx(_vertex_oracle(lp), abs=1e-7)

        x, duals = result.x, result.duals
        scale = max(1.0, float(np.abs(duals).max(initial=0.0)), float(np.abs(result.lower_duals).max()))
        tol = 1e-8 * scale
        assert np.all(duals >= 0)
        assert np.all(result.lower_duals >= 0)
        assert np.all(result.upper_duals >= 0)
        stationarity = lp.c + lp.A.T @ duals - result.lower_duals + result.upper_duals
        assert np.abs(stationarity).max() <= 10 * tol
        assert np.abs(duals * (lp.b - lp.A @ x)).max(initial=0.0) <= tol
        assert np.abs(result.lower_duals * (x - lp.lower)).max() <= tol
        assert np.abs(result.upper_duals * (lp.upper - x)).max() <= tol


def test_infeasible_program() -> None:
    """Contradictory rows yield the infeasible status and no point."""
    lp = LinearProgram(c=[1.0], A=[[1.0], [-1.0]], b=[-1.0, -1.0], lower=[-5.0], upper=[5.0])
    result = solve_lp(lp)
    assert result.status == LpStatus.INFEASIBLE
    assert result.x is None
    assert result.duals_for(RowTag.DOMAIN).size == 0


def test_unbounded_program() -> None:
    """A free direction of descent yields the unbounded status."""
    lp = LinearProgram(c=[-1.0, 0.0], A=[[0.0, 1.0]], b=[1.0], lower=[0.0, 0.0], upper=[np.inf, np.inf])
    assert solve_lp(lp).status == LpStatus.UNBOUNDED


def test_free_and_reflected_variables() -> None:
    """Variables without a lower bound are handled by reflection and splitting."""
    lp = LinearProgram(
        c=[1.0, 1.0],
        A=[[-1.0, 0.0], [0.0, -1.0]],
        b=[2.0, 3.0],
        lower=[-np.inf, -np.inf],
        upper=[np.inf, 4.0],
    )
    result = solve_lp(lp)
    assert result.status == LpStatus.OPTIMAL
    np.testing.assert_allclose(result.x, [-2.0, -3.0], atol=1e-9)
    np.testing.assert_allclose(result.duals, [1.0, 1.0], atol=1e-9)


def test_duals_split_by_row_tag() -> None:
    """Multipliers are reported per row and can be selected by tag."""
    lp = LinearProgram(
        c=[-1.0],
        A=[[1.0], [1.0]],
        b=[0.5, 2.0],
        lower=[0.0],
        upper=[1.0],
        row_tags=(RowTag.SCENARIO, RowTag.DOMAIN),
    )
    result = solve_lp(lp)
    assert result.value == pytest.approx(-0.5)
    np.testing.assert_allclose(result.duals_for(RowTag.SCENARIO), [1.0], atol=1e-9)
    np.testing.assert_allclose(result.duals_for(RowTag.DOMAIN), [0.0], atol=1e-9)


def test_solve_is_deterministic() -> None:
    """A degenerate program returns the same vertex on every call."""
    lp = LinearProgram(c=[-1.0, -1.0], A=[[1.0, 1.0], [1.0, 0.0], [0.0, 1.0]], b=[1.0, 1.0, 1.0], lower=[0, 0], upper=[1, 1])
    first, second = solve_lp(lp), solve_lp(lp)
    assert first.value == pytest.approx(-1.0)
    np.testing.assert_array_equal(first.x, second.x)
    assert first.pivots == second.pivots


def test_pivot_budget(monkeypatch: pytest.MonkeyPatch) -> None:
    """Exhausting the pivot budget raises instead of returning a wrong status."""
    monkeypatch.setattr(settings, "max_pivots", 0)
    lp = LinearProgram(c=[-1.0], A=[[1.0]], b=[1.0], lower=[0.0], upper=[np.inf])
    with pytest.raises(SolverStallError) as excinfo:
        solve_lp(lp)
    assert "stalled" in str(excinfo.value)


def test_dimension_checks() -> None:
    """Rows, bounds and tags must agree with the number of variables and rows."""
    with pytest.raises(ValueError, match="Dimension mismatch"):
        LinearProgram(c=[1.0, 1.0], A=[[1.0]], b=[1.0])
    with pytest.raises(ValueError, match="Dimension mismatch"):
        LinearProgram(c=[1.0], A=[[1.0]], b=[1.0, 2.0])


@pytest.mark.parametrize("angle", [1.3689e-4, 5e-5, 1e-4, 2e-4])
def test_ratio_test_stops_at_the_nearest_row(angle: float) -> None:
    """A row whose step exceeds the bound row's by less than the dual tolerance must not leave the basis."""
    lp = LinearProgram(
        c=[-1.0, 0.0],
        A=[[np.cos(angle), np.sin(angle)]],
        b=[1.0],
        lower=[0.0, 0.0],
        upper=[1.0, 1.0],
    )
    result = solve_lp(lp)
    assert result.status == LpStatus.OPTIMAL
    assert np.all(result.x <= lp.upper + 1e-12)
    assert np.all(result.x >= lp.lower - 1e-12)
    assert np.all(lp.A @ result.x <= lp.b + 1e-9)
    assert result.value == pytest.approx(-1.0, abs=1e-12)
