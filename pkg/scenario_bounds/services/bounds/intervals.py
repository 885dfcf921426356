"""Confidence intervals bridging scenario optimal values to robust and chance-constrained ones."""

from loguru import logger

from scenario_bounds.datatypes.bounds import Branch, ConfidenceReport, IntervalKind, IntervalWidth, Ulb
from scenario_bounds.datatypes.errors import InvalidParamsError, UnachievableSampleSizeError
from scenario_bounds.services.sample_size.binomial import binomial_tail, sample_size


def _check_level(eps: float) -> None:
    if not 0.0 <= eps <= 1.0:
        msg = f"eps must lie in [0, 1], got {eps}"
        raise InvalidParamsError(msg)


def _width(constant: float, ulb: Ulb, eps: float, value_span: float) -> IntervalWidth:
    _check_level(eps)
    if value_span < 0:
        msg = f"objective range must be nonnegative, got {value_span}"
        raise InvalidParamsError(msg)
    lipschitz = constant * float(ulb.h(eps))
    if lipschitz <= value_span:
        return IntervalWidth(value=lipschitz, branch=Branch.LIPSCHITZ)
    return IntervalWidth(value=value_span, branch=Branch.RANGE)


def apriori_interval(L_SP: float, ulb: Ulb, eps: float, value_span: float) -> IntervalWidth:
    """
    Width ``min{L_SP h(eps), max_X c.x - min_X c.x}`` of the a priori interval.

    Args:
        L_SP (float): Perturbation constant of a Slater point.
        ulb (Ulb): The level-set bound.
        eps (float): Violation level in ``[0, 1]``.
        value_span (float): The objective range over the domain.

    Returns:
        IntervalWidth: The width and the active term.
    """
    return _width(L_SP, ulb, eps, value_span)


def aposteriori_interval(dual_l1: float, ulb: Ulb, eps: float, value_span: float) -> IntervalWidth:
    """
    Width ``min{||lambda||_1 h(eps), max_X c.x - min_X c.x}`` of the a posteriori interval.

    Args:
        dual_l1 (float): Sum of the scenario multipliers of the solved scenario program.
        ulb (Ulb): The level-set bound.
        eps (float): Violation level in ``[0, 1]``.
        value_span (float): The objective range over the domain.

    Returns:
        IntervalWidth: The width and the active term.
    """
    return _width(dual_l1, ulb, eps, value_span)


def confidence_for_samples(eps: float, N: int, n: int) -> float:
    """The confidence parameter ``beta`` achieved by ``N`` scenarios at level ``eps`` in dimension ``n``."""
    return binomial_tail(N, n, eps)


def required_samples(eps: float, beta: float, n: int) -> int | None:
    """``sample_size`` that maps an unachievable requirement to None."""
    try:
        return sample_size(eps, beta, n)
    except UnachievableSampleSizeError:
        return None


def build_report(  # noqa: PLR0913
    kind: IntervalKind,
    j_star_n: float,
    width: IntervalWidth,
    eps: float,
    beta: float,
    n_used: int,
    n_required: int | None,
    *,
    partial: bool = False,
    notes: list[str] | None = None,
) -> ConfidenceReport:
    """
    Place an interval of the given width on the correct side of the scenario value.

    Robust values lie above the scenario value, chance-constrained values below it.
    """
    if kind == IntervalKind.RCP_A_PRIORI:
        lo, hi = j_star_n, j_star_n + width.value
    else:
        lo, hi = j_star_n - width.value, j_star_n
    guaranteed = n_required is not None and n_used >= n_required
    if not guaranteed:
        logger.info(f"{kind.value} interval at eps={eps} uses {n_used} scenarios, {n_required} required")
    return ConfidenceReport(
        kind=kind,
        lo=lo,
        hi=hi,
        eps=eps,
        beta=beta,
        n_required=n_required,
        n_used=n_used,
        j_star_n=j_star_n,
        guaranteed=guaranteed,
        branch=width.branch,
        partial=partial,
        notes=notes or [],
    )


def rcp_report(j_star_n: float, width: IntervalWidth, eps: float, beta: float, n_used: int, n: int) -> ConfidenceReport:
    """
    The interval ``[J*_N, J*_N + I(eps)]`` containing the robust optimal value with confidence ``1 - beta``.

    Args:
        j_star_n (float): The scenario optimal value.
        width (IntervalWidth): The a priori width ``I(eps)``.
        eps (float): Violation level.
        beta (float): Confidence parameter.
        n_used (int): Scenarios used by the scenario program.
        n (int): Decision dimension.

    Returns:
        ConfidenceReport: The interval, flagged as guaranteed when enough scenarios were used.
    """
    return build_report(IntervalKind.RCP_A_PRIORI, j_star_n, width, eps, beta, n_used, required_samples(eps, beta, n))


def ccp_report(  # noqa: PLR0913
    j_star_n: float,
    width: IntervalWidth,
    eps: float,
    beta: float,
    n_used: int,
    n: int,
    kind: IntervalKind = IntervalKind.CCP_A_PRIORI,
) -> ConfidenceReport:
    """
    The interval ``[J*_N - I, J*_N]`` containing the chance-constrained optimal value.

    ``width`` is the a priori ``I(eps)`` or the a posteriori ``I_N(eps)``, as told by ``kind``.
    """
    if kind == IntervalKind.RCP_A_PRIORI:
        msg = "ccp_report builds chance-constrained intervals only"
        raise InvalidParamsError(msg)
    return build_report(kind, j_star_n, width, eps, beta, n_used, required_samples(eps, beta, n))


def samples_for_precision(eps_target: float, beta: float, L_SP: float, ulb: Ulb, n: int) -> int:
    """
    Scenarios needed for the a priori interval width to be at most ``eps_target``.

    The level ``g(eps_target / (L_SP L_d))`` is clamped to 1, which only weakens the requirement.

    Args:
        eps_target (float): The desired width, positive.
        beta (float): Confidence parameter.
        L_SP (float): Perturbation constant.
        ulb (Ulb): The level-set bound.
        n (int): Decision dimension.

    Returns:
        int: The sample size at the mapped level.
    """
    if not eps_target > 0:
        msg = f"target precision must be positive, got {eps_target}"
        raise InvalidParamsError(msg)
    scale = L_SP * ulb.L_d
    level = 1.0 if scale == 0 else min(1.0, float(ulb.g(eps_target / scale)))
    logger.debug(f"Precision {eps_target} maps to violation level {level}")
    return sample_size(level, beta, n)
