from distort_lab.middleware.logging import command_logging, configure_logging
from distort_lab.middleware.run_id import RunIdFilter, current_run_id, new_run_id

__all__ = ["command_logging", "configure_logging", "RunIdFilter", "current_run_id", "new_run_id"]
