import argparse
import sys

from collections.abc import Sequence
from pathlib import Path

import uvicorn

from loguru import logger
from pydantic import BaseModel

from scenario_bounds.datatypes.config import SlaterConfig, UlbConfig
from scenario_bounds.datatypes.experiments import Example1Config
from scenario_bounds.services.experiments.counterexample import run_counterexample
from scenario_bounds.services.experiments.example1 import run_example1
from scenario_bounds.services.problems.workflows import compute_sample_size, problem_bounds, solve_problem, solve_union
from scenario_bounds.settings import settings


def _emit(result: BaseModel, exclude: set[str] | None = None) -> None:
    sys.stdout.write(result.model_dump_json(indent=2, exclude=exclude) + "\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        msg = f"expected comma-separated numbers, got '{text}'"
        raise argparse.ArgumentTypeError(msg) from e


def parse_ulb(text: str) -> UlbConfig:
    """Parse ``"L_d,kappa[,p]"``."""
    values = _floats(text)
    if len(values) not in (2, 3):
        msg = f"expected 'L_d,kappa[,p]', got '{text}'"
        raise argparse.ArgumentTypeError(msg)
    return UlbConfig(L_d=values[0], kappa=values[1], p=values[2] if len(values) == 3 else 1.0)  # noqa: PLR2004


def parse_slater(text: str) -> SlaterConfig:
    """Parse a comma-separated Slater point, or ``minmax`` for the min-max certificate."""
    if text.strip().lower() == "minmax":
        return SlaterConfig(min_max=True)
    return SlaterConfig(x0=_floats(text))


def cmd_sample_size(args: argparse.Namespace) -> None:
    _emit(compute_sample_size(args.eps, args.beta, args.n, args.m))


def cmd_solve(args: argparse.Namespace) -> None:
    _emit(solve_problem(args.config, args.n_scenarios, args.seed, args.gamma, tie_break=args.tie_break))


def cmd_bounds(args: argparse.Namespace) -> None:
    outcome = problem_bounds(
        args.config,
        args.eps,
        args.beta,
        args.n_scenarios,
        args.seed,
        ulb=args.ulb,
        slater=args.slater,
        posterior=args.posterior,
    )
    _emit(outcome)


def cmd_solve_union(args: argparse.Namespace) -> None:
    _emit(solve_union(args.config, args.n_scenarios, args.seed, args.beta))


def cmd_example1(args: argparse.Namespace) -> None:
    config = Example1Config(
        N=args.n_scenarios,
        M=args.experiments,
        eps_grid=Example1Config.parse_grid(args.eps_grid),
        seed=args.seed,
    )
    result = run_example1(config, args.out)
    _emit(result, exclude={"records"})


def cmd_counterexample(args: argparse.Namespace) -> None:
    _emit(run_counterexample(args.n_scenarios, args.runs, args.seed))


def cmd_serve(args: argparse.Namespace) -> None:  # noqa: ARG001  # pragma: no cover
    uvicorn.run(
        "scenario_bounds.web.application:get_app",
        workers=settings.workers_count,
        host=settings.host,
        port=settings.port,
        reload=settings.reload,
        log_level=settings.log_level.value.lower(),
        factory=True,
    )


def build_parser() -> argparse.ArgumentParser:
    """The command-line parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog="scenario-bounds",
        description="Scenario sample sizes, scenario programs and confidence intervals",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    ps = sub.add_parser("sample-size", help="Minimal number of scenarios for a level and a confidence")
    ps.add_argument("--eps", type=float, required=True)
    ps.add_argument("--beta", type=float, required=True)
    ps.add_argument("--n", type=int, required=True, help="Decision dimension")
    ps.add_argument("--m", type=int, default=1, help="Number of subprograms sharing the level")
    ps.set_defaults(func=cmd_sample_size)

    pv = sub.add_parser("solve", help="Solve the scenario program of a problem")
    pv.add_argument("--config", type=str, required=True, help="Problem file or built-in name")
    pv.add_argument("--n-scenarios", type=int, required=True)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--gamma", type=float, default=0.0)
    pv.add_argument("--tie-break", action="store_true", help="Also select the least-norm optimizer")
    pv.set_defaults(func=cmd_solve)

    pb = sub.add_parser("bounds", help="Confidence intervals around the scenario value")
    pb.add_argument("--config", type=str, required=True, help="Problem file or built-in name")
    pb.add_argument("--ulb", type=parse_ulb, default=None, help="'L_d,kappa[,p]', overrides the file")
    pb.add_argument("--slater", type=parse_slater, default=None, help="Slater point 'x1,x2,...' or 'minmax'")
    pb.add_argument("--eps", type=float, required=True)
    pb.add_argument("--beta", type=float, required=True)
    pb.add_argument("--n-scenarios", type=int, required=True)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--posterior", action="store_true", help="A posteriori chance-constrained interval")
    pb.set_defaults(func=cmd_bounds)

    pu = sub.add_parser("solve-union", help="Solve a union-of-subprograms scenario program")
    pu.add_argument("--config", type=str, required=True, help="Family file or built-in name")
    pu.add_argument("--n-scenarios", type=int, required=True)
    pu.add_argument("--seed", type=int, default=0)
    pu.add_argument("--beta", type=float, default=None, help="Confidence parameter of the union report")
    pu.set_defaults(func=cmd_solve_union)

    pe = sub.add_parser("example1", help="Monte Carlo reproduction of the planar benchmark")
    pe.add_argument("--n-scenarios", type=int, required=True)
    pe.add_argument("--experiments", type=int, default=2000)
    pe.add_argument("--eps-grid", type=str, default="0.01:0.49:49", help="'start:stop:count' or 'e1,e2,...'")
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--out", type=Path, default=None, help="CSV destination")
    pe.set_defaults(func=cmd_example1)

    pc = sub.add_parser("counterexample", help="Robust infeasibility of scenario optimizers")
    pc.add_argument("--n-scenarios", type=int, required=True)
    pc.add_argument("--runs", type=int, default=2000)
    pc.add_argument("--seed", type=int, default=0)
    pc.set_defaults(func=cmd_counterexample)

    pr = sub.add_parser("serve", help="Run the HTTP API")
    pr.set_defaults(func=cmd_serve)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """
    Run one subcommand.

    Args:
        argv (Sequence[str] | None): The arguments, ``sys.argv[1:]`` when omitted.

    Returns:
        int: 0 on success, 2 when the input is rejected or a solver fails.
    """
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ValueError as e:
        logger.error(f"{args.cmd}: {e}")
        return 2
    except RuntimeError:
        logger.exception(f"{args.cmd} failed")
        return 2
    return 0


def main() -> None:
    """Entrypoint of the application."""
    sys.exit(run())


if __name__ == "__main__":
    main()
