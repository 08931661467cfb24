import json
import os
import tempfile
from pathlib import Path
from typing import Any, Union

from distort_lab.utils.exceptions import UsageError


def write_atomic(path: Union[str, Path], content: str) -> Path:
    """write through a temp file in the target directory, then rename over the target"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp, target)
    except BaseException:
        # never leave a partial output behind
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def write_json(path: Union[str, Path], payload: Any) -> Path:
    return write_atomic(path, json.dumps(payload, indent=2) + "\n")


def read_json(path: Union[str, Path]) -> Any:
    """load a json document, mapping io and syntax problems to usage errors"""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed json in {path}: {exc.msg} at line {exc.lineno}") from exc
