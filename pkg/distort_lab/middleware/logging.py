import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Optional

from pythonjsonlogger import jsonlogger

from distort_lab.config import Settings
from distort_lab.middleware.run_id import RunIdFilter, current_run_id

logger = logging.getLogger("distort_lab.cli")


def configure_logging(settings: Settings, stream=None) -> logging.Handler:
    """
    structured json logging on the distort_lab logger tree
    records go to stderr so stdout stays machine-readable
    """
    root = logging.getLogger("distort_lab")
    for handler in list(root.handlers):
        if getattr(handler, "_distort_lab", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    if settings.log_format == "json":
        formatter = jsonlogger.JsonFormatter("%(asctime)s %(levelname)s %(name)s %(run_id)s %(message)s")
    else:
        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    handler.setFormatter(formatter)
    handler.addFilter(RunIdFilter())
    handler._distort_lab = True
    root.addHandler(handler)
    root.setLevel(settings.log_level.upper())
    root.propagate = False
    return handler


@contextmanager
def command_logging(command: str, run_id: Optional[str]) -> Iterator[None]:
    """logs one command with timing info, binding its run id for nested records"""
    token = current_run_id.set(run_id)
    start_time = time.time()
    logger.info("command started", extra={"command": command})
    try:
        yield
        logger.info(
            "command completed",
            extra={"command": command, "duration_ms": round((time.time() - start_time) * 1000, 2)},
        )
    except Exception as e:
        logger.error(
            "command failed",
            extra={
                "command": command,
                "duration_ms": round((time.time() - start_time) * 1000, 2),
                "error": str(e),
            },
            exc_info=True,
        )
        raise
    finally:
        current_run_id.reset(token)
