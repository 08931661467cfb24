import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Type

from pydantic import ValidationError

from distort_lab.config import RunConfig, Settings
from distort_lab.middleware import command_logging, configure_logging, new_run_id
from distort_lab.routers import (
    certify_router,
    embed_router,
    ordinal_router,
    selftest_router,
    solve_router,
    space_router,
    stepfn_router,
    tree_router,
)
from distort_lab.routers.base import CommandContext, CommandOutput, count
from distort_lab.utils.exceptions import (
    DomainError,
    SizeCapExceededError,
    UsageError,
    VerificationError,
    WorkbenchError,
)
from distort_lab.utils.io import write_atomic, write_json

logger = logging.getLogger("distort_lab.main")

ROUTERS = [
    ordinal_router,
    tree_router,
    space_router,
    embed_router,
    stepfn_router,
    solve_router,
    certify_router,
    selftest_router,
]


class WorkbenchArgumentParser(argparse.ArgumentParser):
    """argparse that reports bad input as a usage error instead of exiting"""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def common_options() -> argparse.ArgumentParser:
    """flags accepted by every subcommand; unset flags fall back to settings"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("-o", "--output", default=None, help="write the json (or csv) result to this file")
    common.add_argument("--size-cap", type=count, default=None)
    common.add_argument("--width", type=count, default=None, help="truncation width for trees and families")
    common.add_argument("--budget", type=count, default=None, help="branch-and-bound node budget")
    common.add_argument("--threads", type=count, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--subproblem", choices=["cycles", "simplex"], default=None)
    return common


def build_parser(app_settings: Settings) -> WorkbenchArgumentParser:
    parser = WorkbenchArgumentParser(
        prog=app_settings.app_name,
        description="exact constructions, embeddings and distortion bounds between spaces of continuous functions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {app_settings.app_version}")
    groups = parser.add_subparsers(dest="group", metavar="COMMAND", parser_class=WorkbenchArgumentParser)
    groups.required = True
    parents = [common_options()]
    for router in ROUTERS:
        router.install(groups, parents, WorkbenchArgumentParser)
    return parser


# error handlers, most specific class first

Handler = Callable[[Exception, Optional[str]], int]
_handlers: Dict[Type[Exception], Handler] = {}


def exception_handler(exc_class: Type[Exception]):
    def decorator(func: Handler) -> Handler:
        _handlers[exc_class] = func
        return func
    return decorator


def _emit_error(payload: dict, run_id: Optional[str]) -> None:
    payload["run_id"] = run_id
    print(json.dumps(payload), file=sys.stderr)


@exception_handler(UsageError)
def usage_error_handler(exc: UsageError, run_id: Optional[str]) -> int:
    """handle malformed input"""
    _emit_error(exc.to_payload(), run_id)
    return exc.exit_code


@exception_handler(SizeCapExceededError)
def size_cap_handler(exc: SizeCapExceededError, run_id: Optional[str]) -> int:
    """handle oversized constructions; the payload carries the sizing report"""
    _emit_error(exc.to_payload(), run_id)
    return exc.exit_code


@exception_handler(DomainError)
def domain_error_handler(exc: DomainError, run_id: Optional[str]) -> int:
    _emit_error(exc.to_payload(), run_id)
    return exc.exit_code


@exception_handler(VerificationError)
def verification_error_handler(exc: VerificationError, run_id: Optional[str]) -> int:
    """handle failed exact checks"""
    _emit_error(exc.to_payload(), run_id)
    return exc.exit_code


@exception_handler(WorkbenchError)
def workbench_error_handler(exc: WorkbenchError, run_id: Optional[str]) -> int:
    _emit_error(exc.to_payload(), run_id)
    return exc.exit_code


@exception_handler(Exception)
def generic_exception_handler(exc: Exception, run_id: Optional[str]) -> int:
    """catch-all handler for unexpected errors"""
    logger.error(f"unhandled exception: {exc}", exc_info=True)
    _emit_error({"error": "internal_error", "message": "an unexpected error occurred"}, run_id)
    return 1


def handle(exc: Exception, run_id: Optional[str]) -> int:
    for cls in type(exc).__mro__:
        if cls in _handlers:
            return _handlers[cls](exc, run_id)
    raise exc


def _write(output: CommandOutput, args: argparse.Namespace, run: RunConfig) -> None:
    payload = dict(output.payload)
    payload.setdefault("run", run.model_dump())
    if args.output:
        if output.csv is not None:
            write_atomic(args.output, output.csv)
        else:
            write_json(args.output, payload)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(output.text)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """parse argv, run one subcommand and return its exit code"""
    try:
        app_settings = Settings()
    except ValidationError as exc:
        first = exc.errors()[0]
        return handle(UsageError(f"invalid setting {first['loc'][0]}: {first['msg']}"), None)
    configure_logging(app_settings)

    run_id: Optional[str] = None
    try:
        args = build_parser(app_settings).parse_args(argv)
        run_id = new_run_id()
        run = RunConfig.from_settings(
            app_settings,
            run_id,
            args.command,
            size_cap=args.size_cap,
            width=args.width,
            budget=args.budget,
            threads=args.threads,
            seed=args.seed,
            subproblem=args.subproblem,
            output=args.output,
        )
        with command_logging(args.command, run_id):
            output = args.handler(args, CommandContext(app_settings, run))
            _write(output, args, run)
        return output.exit_code
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else 0
    except Exception as exc:
        return handle(exc, run_id)


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
