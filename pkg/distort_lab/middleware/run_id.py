import logging
import os
import uuid
from contextvars import ContextVar
from typing import Optional

# run id of the command currently executing
current_run_id: ContextVar[Optional[str]] = ContextVar("run_id", default=None)


def new_run_id() -> str:
    """
    unique id for one cli invocation
    an id supplied through DISTORT_LAB_RUN_ID (e.g. by a batch driver) is reused
    """
    return os.environ.get("DISTORT_LAB_RUN_ID") or str(uuid.uuid4())


class RunIdFilter(logging.Filter):
    """stamps every record with the active run id"""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = current_run_id.get()
        return True
