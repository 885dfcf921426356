import json

from pathlib import Path
from typing import Any

import numpy as np

from loguru import logger
from pydantic import BaseModel, ConfigDict

from scenario_bounds.datatypes.bounds import SlaterCertificate, Ulb
from scenario_bounds.datatypes.config import FamilyConfig, ProblemConfig, SlaterConfig, UlbConfig
from scenario_bounds.datatypes.errors import SharedSamplerError, UnknownBuiltinError
from scenario_bounds.datatypes.nonconvex import SubprogramFamily, SubprogramMember
from scenario_bounds.datatypes.problems import Polytope, UncertainProgram
from scenario_bounds.services.bounds.slater import min_max_certificate, slater_constant
from scenario_bounds.services.bounds.ulb import build_ulb
from scenario_bounds.services.problems.builtins import affine_table, builtin_constraint, builtin_sampler
from scenario_bounds.settings import settings

ConfigRef = str | Path | dict[str, Any]


class LoadedProblem(BaseModel):
    """
    A problem built from its configuration.

    Attributes:
        name (str): Display name.
        program (UncertainProgram): The program data.
        slater (SlaterCertificate | None): Perturbation certificate when configured.
        ulb (Ulb | None): Level-set bound when configured.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    program: UncertainProgram
    slater: SlaterCertificate | None = None
    ulb: Ulb | None = None


def list_problems() -> list[str]:
    """Names of the built-in configuration files."""
    return sorted(path.stem for path in Path(settings.problems_dir).glob("*.json"))


def broken_problems() -> dict[str, str]:
    """
    Validate every built-in configuration file.

    Files with a ``members`` key are read as union families, all others as problems.

    Returns:
        dict[str, str]: The name of each file that fails to parse or validate, mapped to the first error line.
    """
    broken = {}
    for name in list_problems():
        try:
            data = _read(name)
            (FamilyConfig if "members" in data else ProblemConfig).model_validate(data)
        except ValueError as e:
            broken[name] = str(e).splitlines()[0]
    return broken


def _read(ref: ConfigRef) -> dict[str, Any]:
    if isinstance(ref, dict):
        return ref
    path = Path(ref)
    if not path.is_file():
        path = Path(settings.problems_dir) / f"{ref}.json"
    if not path.is_file():
        raise UnknownBuiltinError("problem", str(ref))
    logger.debug(f"Reading configuration {path}")
    with path.open(encoding="utf-8") as file:
        return json.load(file)


def load_problem_config(ref: ConfigRef) -> ProblemConfig:
    """
    Parse a problem configuration given inline, as a file path or as a built-in name.

    Args:
        ref (ConfigRef): The configuration object, a path to a JSON file, or the name of a built-in file.

    Returns:
        ProblemConfig: The validated configuration.
    """
    return ProblemConfig.model_validate(_read(ref))


def load_family_config(ref: ConfigRef) -> FamilyConfig:
    """Parse a union program configuration given inline, as a file path or as a built-in name."""
    return FamilyConfig.model_validate(_read(ref))


def _polytope(config: ProblemConfig) -> Polytope:
    box = config.polytope.box

    def _bound(values: list[float | None] | None, missing: float) -> list[float] | None:
        if values is None:
            return None
        return [missing if value is None else value for value in values]

    return Polytope(
        dimension=config.n,
        A=[row.a for row in config.polytope.rows],
        b=[row.b for row in config.polytope.rows],
        lower=_bound(box.lower, -np.inf) if box is not None else None,
        upper=_bound(box.upper, np.inf) if box is not None else None,
    )


def build_certificate(program: UncertainProgram, config: SlaterConfig) -> SlaterCertificate:
    """The perturbation certificate described by ``config``: the min-max constant or a Slater point's."""
    if config.min_max:
        return min_max_certificate()
    return slater_constant(program, np.asarray(config.x0, dtype=float), config.sup_value)


def build_level_set_bound(config: UlbConfig) -> Ulb:
    """The level-set bound described by ``config``."""
    return build_ulb(config.L_d, config.kappa, config.p)


def build_problem(config: ProblemConfig) -> LoadedProblem:
    """
    Build the program, its certificate and its level-set bound from a configuration.

    Args:
        config (ProblemConfig): The configuration.

    Returns:
        LoadedProblem: The built problem.
    """
    if isinstance(config.constraint, str):
        constraint = builtin_constraint(config.constraint)
    else:
        constraint = affine_table(config.constraint.knots, config.constraint.a, config.constraint.b)
    program = UncertainProgram(
        c=config.c,
        domain=_polytope(config),
        constraint=constraint,
        sampler=builtin_sampler(config.sampler.kind, config.sampler.lo, config.sampler.hi),
    )
    slater = build_certificate(program, config.slater) if config.slater is not None else None
    ulb = build_level_set_bound(config.ulb) if config.ulb is not None else None
    logger.info(f"Loaded problem '{config.name}' with n={config.n} and {len(config.polytope.rows)} domain rows")
    return LoadedProblem(name=config.name, program=program, slater=slater, ulb=ulb)


def load_problem(ref: ConfigRef) -> LoadedProblem:
    """Parse and build a problem in one step."""
    return build_problem(load_problem_config(ref))


def load_family(ref: ConfigRef) -> SubprogramFamily:
    """
    Parse and build a union program; members given by name resolve to built-in problems.

    Raises:
        SharedSamplerError: If the members do not use the same sampler configuration.
    """
    config = load_family_config(ref)
    members = [load_problem_config(member) if isinstance(member, str) else member for member in config.members]
    for k, member in enumerate(members[1:], start=1):
        if member.sampler != members[0].sampler:
            raise SharedSamplerError(k)
    built = [build_problem(member) for member in members]
    return SubprogramFamily(
        members=[
            SubprogramMember(program=problem.program, eps=eps, slater=problem.slater, ulb=problem.ulb, label=problem.name)
            for problem, eps in zip(built, config.eps_k, strict=True)
        ],
    )
