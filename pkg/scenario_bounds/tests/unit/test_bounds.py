import numpy as np
import pytest

from scenario_bounds.datatypes.bounds import Branch, ConfidenceReport, IntervalKind, IntervalWidth, Ulb
from scenario_bounds.datatypes.errors import (
    DimensionMismatchError,
    InvalidParamsError,
    InvalidUlbError,
    NotSlaterPointError,
)
from scenario_bounds.datatypes.problems import UncertainProgram
from scenario_bounds.services.bounds.intervals import (
    aposteriori_interval,
    apriori_interval,
    ccp_report,
    confidence_for_samples,
    rcp_report,
    required_samples,
    samples_for_precision,
)
from scenario_bounds.services.bounds.slater import min_max_certificate, slater_constant
from scenario_bounds.services.bounds.ulb import build_ulb, tail_probability, ulb_empirical_check
from scenario_bounds.services.experiments.analytic import analytic_example1_rcp
from scenario_bounds.services.lp.ranges import value_range
from scenario_bounds.services.sampling.scenarios import estimate_violation


@pytest.fixture(scope="module")
def ulb() -> Ulb:
    """The level-set bound of the planar benchmark, ``h(eps) = sqrt(2) pi eps``."""
    return build_ulb(np.sqrt(2.0), 1.0 / np.pi, 1.0)


@pytest.mark.parametrize(
    ("L_d", "kappa", "p", "reason"),
    [(0.0, 1.0, 1.0, "L_d"), (1.0, -1.0, 1.0, "kappa"), (1.0, 1.0, 0.5, "p must")],
)
def test_invalid_level_set_bounds(L_d: float, kappa: float, p: float, reason: str) -> None:
    """Each parameter is checked against its range."""
    with pytest.raises(InvalidUlbError, match=reason):
        build_ulb(L_d, kappa, p)


def test_level_set_bound_values(ulb: Ulb) -> None:
    """``h`` inverts the ball-measure bound and scales it by the Lipschitz constant."""
    assert float(ulb.h(0.1)) == pytest.approx(np.sqrt(2.0) * np.pi * 0.1)
    assert float(ulb.g(ulb.g_inv(0.3))) == pytest.approx(0.3)
    cubic = build_ulb(2.0, 8.0, 3.0)
    assert float(cubic.h(1.0)) == pytest.approx(1.0)


def test_slater_constant_of_the_origin(example1: UncertainProgram) -> None:
    """At the origin the margin is -1 and the objective drop to the floor is 2."""
    certificate = slater_constant(example1, np.zeros(2))
    assert certificate.margin == pytest.approx(-1.0)
    assert certificate.L_SP == pytest.approx(2.0)
    assert not certificate.min_max
    assert slater_constant(example1, np.zeros(2), sup_value=-0.5).L_SP == pytest.approx(4.0)


def test_slater_point_is_validated(example1: UncertainProgram) -> None:
    """The point must be strictly feasible, inside the domain and of the right size."""
    with pytest.raises(NotSlaterPointError):
        slater_constant(example1, np.ones(2))
    with pytest.raises(InvalidParamsError, match="outside the domain"):
        slater_constant(example1, np.array([2.0, 2.0]))
    with pytest.raises(DimensionMismatchError):
        slater_constant(example1, np.zeros(3))


def test_min_max_certificate() -> None:
    """Min-max programs carry the unit constant without a point."""
    certificate = min_max_certificate()
    assert certificate.min_max
    assert certificate.L_SP == 1.0
    assert certificate.x0 is None


def test_value_range(example1: UncertainProgram) -> None:
    """The objective spans [-2, 0] over the unit box."""
    assert value_range(example1.c, example1.domain) == pytest.approx((-2.0, 0.0))


def test_width_branches(ulb: Ulb) -> None:
    """The Lipschitz term is active for small levels, the objective range for large ones."""
    small = apriori_interval(2.0, ulb, 0.1, 2.0)
    assert small.branch == Branch.LIPSCHITZ
    assert small.value == pytest.approx(2.0 * np.sqrt(2.0) * np.pi * 0.1)
    large = apriori_interval(2.0, ulb, 0.4, 2.0)
    assert large.branch == Branch.RANGE
    assert large.value == 2.0
    posterior = aposteriori_interval(1.0, ulb, 0.1, 2.0)
    assert posterior.value == pytest.approx(small.value / 2.0)
    assert aposteriori_interval(0.0, ulb, 0.3, 2.0).value == 0.0


def test_width_arguments_are_checked(ulb: Ulb) -> None:
    """Levels outside [0, 1] and negative ranges are rejected."""
    with pytest.raises(InvalidParamsError, match="eps"):
        apriori_interval(2.0, ulb, 1.5, 2.0)
    with pytest.raises(InvalidParamsError, match="objective range"):
        aposteriori_interval(1.0, ulb, 0.1, -1.0)


def test_robust_interval_lies_above_the_scenario_value(ulb: Ulb) -> None:
    """The robust interval starts at the scenario value and is guaranteed with enough scenarios."""
    width = apriori_interval(2.0, ulb, 0.1, 2.0)
    report = rcp_report(-1.5, width, 0.1, 0.01, 64, 2)
    assert report.kind == IntervalKind.RCP_A_PRIORI
    assert report.lo == -1.5
    assert report.hi == pytest.approx(-1.5 + width.value)
    assert report.n_required == 64
    assert report.guaranteed
    assert report.width == pytest.approx(width.value)
    assert not rcp_report(-1.5, width, 0.1, 0.01, 63, 2).guaranteed


def test_chance_interval_lies_below_the_scenario_value(ulb: Ulb) -> None:
    """The chance-constrained interval ends at the scenario value."""
    width = aposteriori_interval(1.0, ulb, 0.1, 2.0)
    report = ccp_report(-1.5, width, 0.1, 0.01, 10, 2, kind=IntervalKind.CCP_A_POSTERIORI)
    assert report.kind == IntervalKind.CCP_A_POSTERIORI
    assert report.hi == -1.5
    assert report.lo == pytest.approx(-1.5 - width.value)
    assert not report.guaranteed
    with pytest.raises(InvalidParamsError):
        ccp_report(-1.5, width, 0.1, 0.01, 10, 2, kind=IntervalKind.RCP_A_PRIORI)


def test_unachievable_requirement_is_reported_as_missing() -> None:
    """A zero level has no finite requirement and no guarantee."""
    assert required_samples(0.0, 0.01, 2) is None
    report = rcp_report(-1.0, IntervalWidth(value=0.0, branch=Branch.LIPSCHITZ), 0.0, 0.01, 1000, 2)
    assert report.n_required is None
    assert not report.guaranteed


def test_report_invariants() -> None:
    """Reversed intervals and unfounded guarantees are refused."""
    fields = {
        "kind": IntervalKind.CCP_A_PRIORI,
        "eps": 0.1,
        "beta": 0.01,
        "n_used": 10,
        "j_star_n": 0.0,
        "branch": Branch.LIPSCHITZ,
    }
    with pytest.raises(ValueError, match="reversed"):
        ConfidenceReport(lo=1.0, hi=0.0, n_required=5, guaranteed=True, **fields)
    with pytest.raises(ValueError, match="guarantee flag"):
        ConfidenceReport(lo=-1.0, hi=0.0, n_required=None, guaranteed=True, **fields)


def test_confidence_for_samples_matches_requirement() -> None:
    """The requirement achieves the confidence it was computed for."""
    N = required_samples(0.1, 0.01, 2)
    assert confidence_for_samples(0.1, N, 2) <= 0.01
    assert confidence_for_samples(0.1, N - 1, 2) > 0.01


def test_samples_for_precision(ulb: Ulb) -> None:
    """A precision finer than the objective range maps to a level, a coarse one needs two samples."""
    assert samples_for_precision(100.0, 0.01, 2.0, ulb, 2) == 2
    target = 0.5
    level = float(ulb.g(target / (2.0 * ulb.L_d)))
    assert samples_for_precision(target, 0.01, 2.0, ulb, 2) == required_samples(level, 0.01, 2)
    with pytest.raises(InvalidParamsError):
        samples_for_precision(0.0, 0.01, 2.0, ulb, 2)


def test_empirical_check_accepts_a_valid_bound(example1: UncertainProgram, ulb: Ulb) -> None:
    """The benchmark bound holds on a grid of the unit box."""
    grid = [[0.0, 0.0], [1.0, 1.0], [0.5, 0.2], [1.0, 0.0]]
    report = ulb_empirical_check(ulb, example1, grid, [0.05, 0.2, 0.5], K=4000, seed=1)
    assert len(report.rows) == 12
    assert report.violations == []


def test_empirical_check_flags_a_bound_that_is_too_tight(example1: UncertainProgram) -> None:
    """A far too small Lipschitz constant is caught away from the origin."""
    tight = build_ulb(1e-3, 1.0, 1.0)
    report = ulb_empirical_check(tight, example1, [[0.0, 0.0], [1.0, 1.0]], [0.2], K=4000, seed=1)
    flagged = report.violations
    assert [row.x for row in flagged] == [[1.0, 1.0]]


def test_tail_probability(example1: UncertainProgram) -> None:
    """Every draw is within a distance larger than the constraint's spread of the worst case."""
    assert tail_probability(example1, np.array([1.0, 1.0]), 10.0, K=500, seed=0) == 1.0
    assert tail_probability(example1, np.array([1.0, 1.0]), 1e-12, K=500, seed=0) < 0.01


@pytest.mark.parametrize("eps", [0.02, 0.1, 0.25])
def test_rarely_violated_decisions_have_small_worst_case(example1: UncertainProgram, ulb: Ulb, eps: float) -> None:
    """A decision of the box violated at most ``eps`` of the time has worst case at most ``h(eps)``."""
    rng = np.random.default_rng(41)
    checked = 0
    for k in range(200):
        x = rng.uniform(0.0, 1.0, 2)
        estimate = estimate_violation(x, example1.constraint, example1.sampler, 4000, seed=k)
        if estimate.probability <= eps:
            checked += 1
            assert example1.constraint.worst_case(x) <= float(ulb.h(eps)) + 1e-12
    assert checked > 0


def test_analytic_values_are_lipschitz_in_the_relaxation() -> None:
    """Relaxing by ``g2 - g1`` lowers the robust value by at most ``L_SP (g2 - g1)`` with ``L_SP = 2``."""
    rng = np.random.default_rng(43)
    for _ in range(10):
        g1, g2 = np.sort(rng.uniform(0.0, 0.4, 2))
        gap = analytic_example1_rcp(g1) - analytic_example1_rcp(g2)
        assert 0.0 <= gap <= 2.0 * (g2 - g1)
