import numpy as np

from scenario_bounds.datatypes.bounds import SlaterCertificate
from scenario_bounds.datatypes.errors import DimensionMismatchError, InvalidParamsError, NotSlaterPointError
from scenario_bounds.datatypes.problems import UncertainProgram
from scenario_bounds.services.lp.ranges import value_range


def slater_constant(program: UncertainProgram, x0: np.ndarray, sup_value: float | None = None) -> SlaterCertificate:
    """
    Compute the perturbation constant ``L_SP = (min_X c.x - c.x0) / sup_d f(x0, d)`` of a Slater point.

    Args:
        program (UncertainProgram): The program.
        x0 (np.ndarray): The candidate Slater point.
        sup_value (float | None): The worst-case constraint value at ``x0``; taken from the
            constraint's worst-case oracle when omitted.

    Returns:
        SlaterCertificate: The point, its margin and the constant.

    Raises:
        NotSlaterPointError: If the worst-case value is not negative.
    """
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    if x0.shape[0] != program.n:
        raise DimensionMismatchError("Slater point", program.n, x0.shape[0])
    if not program.domain.contains(x0):
        msg = f"Slater point {x0.tolist()} lies outside the domain"
        raise InvalidParamsError(msg)
    margin = program.constraint.worst_case(x0) if sup_value is None else float(sup_value)
    if not margin < 0:
        raise NotSlaterPointError(margin)
    lowest, _ = value_range(program.c, program.domain)
    L_SP = max(0.0, (lowest - float(program.c @ x0)) / margin)
    return SlaterCertificate(x0=x0, margin=margin, L_SP=L_SP)


def min_max_certificate() -> SlaterCertificate:
    """The certificate of a min-max (epigraph) program, whose perturbation constant is 1."""
    return SlaterCertificate(L_SP=1.0, min_max=True)
