"""Command-line entry point: ``greenroute {validate,solve,export,demo,gen}``."""
import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from greenroute import __version__
from greenroute.commands.demo import cmd_demo
from greenroute.commands.deps import EXIT_BUDGET, EXIT_INFEASIBLE, EXIT_INPUT, write_document
from greenroute.commands.export import cmd_export
from greenroute.commands.gen import cmd_gen
from greenroute.commands.solve import cmd_solve
from greenroute.commands.validate import cmd_validate
from greenroute.core.errors import BudgetExceeded, GreenRouteError, Infeasible
from greenroute.core.logging import get_logger, setup_logging
from greenroute.schemas.common import ErrorReport
from greenroute.schemas.run_config import RunConfig
from greenroute.services.formulation.builders import Variant

logger = get_logger(__name__)

COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "validate": cmd_validate,
    "solve": cmd_solve,
    "export": cmd_export,
    "demo": cmd_demo,
    "gen": cmd_gen,
}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Raises on bad usage instead of exiting with status 2, which means violations here."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="greenroute",
        description="Exact energy-aware routing on router/card/port networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Override the configured log level")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser, variant: bool = True, solver: bool = False) -> None:
        sub.add_argument("instance", type=Path, help="Instance file (JSON)")
        sub.add_argument("-o", "--output", type=Path, default=None, help="Output path (default: stdout)")
        if variant:
            sub.add_argument(
                "--variant",
                choices=[v.value for v in Variant],
                default=Variant.CORRECTED.value,
            )
        if solver:
            sub.add_argument("--budget", type=int, default=None, help="Branch-and-bound node limit")
            sub.add_argument("--threads", type=int, default=None, help="Worker threads for branch-and-bound")

    validate = subparsers.add_parser("validate", help="Validate an instance, optionally checking a solution")
    add_common(validate)
    validate.add_argument("--solution", type=Path, default=None, help="Solution file to check")

    add_common(subparsers.add_parser("solve", help="Solve an instance exactly"), solver=True)
    add_common(subparsers.add_parser("export", help="Write the model in LP format"))
    add_common(
        subparsers.add_parser("demo", help="Demonstrate both defects of the original model"),
        variant=False,
        solver=True,
    )

    gen = subparsers.add_parser("gen", help="Generate a random instance")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("-o", "--output", type=Path, default=None, help="Output path (default: stdout)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        instance_path=getattr(args, "instance", None),
        variant=getattr(args, "variant", Variant.CORRECTED.value),
        budget=getattr(args, "budget", None),
        seed=getattr(args, "seed", None),
        threads=getattr(args, "threads", None),
        output_path=args.output,
        solution_path=getattr(args, "solution", None),
    )


def _fail(detail: str, error_code: str, exit_code: int) -> int:
    logger.warning(f"{error_code}: {detail}")
    write_document(ErrorReport(detail=detail, error_code=error_code), None)
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        return _fail(str(exc), "UsageError", EXIT_INPUT)

    setup_logging(args.log_level)
    try:
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except Infeasible as exc:
        return _fail(exc.detail, exc.error_code, EXIT_INFEASIBLE)
    except BudgetExceeded as exc:
        return _fail(exc.detail, exc.error_code, EXIT_BUDGET)
    except GreenRouteError as exc:
        return _fail(exc.detail, exc.error_code, EXIT_INPUT)
    except ValidationError as exc:
        return _fail(str(exc), "SchemaError", EXIT_INPUT)
    except (OSError, ValueError) as exc:
        return _fail(str(exc), type(exc).__name__, EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
