"""Structured JSON-lines logging.

Every record is one JSON object with ``time``, ``level`` and ``msg`` first,
followed by the caller's fields. Records go to standard error, leaving
standard output for reports. Errors and criticals carry the formatted
traceback and bump an error counter.

**Usage:**
```python
logger = Logger(Counter(), log_level=LogLevel.INFO, colorized=True)
logger.info("Step finished", step=3, movement=0.25)
logger.error("Solver failed", err=SolverFailure(400, 1.5))
```
"""

import json
import os
import sys
import time
import traceback
from enum import IntEnum
from typing import TextIO

import numpy as np

from .counter import Counter

_ANSI_COLORS = {
    "red": 1,
    "green": 2,
    "orange": 3,
    "blue": 4,
    "pink": 5,
    "teal": 6,
    "white": 7,
    "gray": 9,
}
_ANSI_STYLES = {"normal": 0, "bold": 1, "ulined": 4}
_ANSI_RESET = "\033[0;39;49m"


def _color(msg: str, color: str = "gray", fmt: str = "normal") -> str:
    """Wraps msg in ANSI escape codes for the given color and style."""
    return f"\033[{_ANSI_STYLES[fmt]};3{_ANSI_COLORS[color]}m{msg}{_ANSI_RESET}"


class LogLevel(IntEnum):
    """Severity levels, in increasing order."""

    NOTSET = 0
    DEBUG = 1
    INFO = 2
    WARNING = 3
    ERROR = 4
    CRITICAL = 5

    @classmethod
    def from_name(cls, name: str) -> "LogLevel":
        """Looks up a level by its case-insensitive name.

        Raises:
            ValueError: If the name is not a log level.
        """
        try:
            return cls[name.upper()]
        except KeyError as e:
            raise ValueError(f"Unknown log level: {name}") from e


_LEVEL_COLORS = {
    LogLevel.DEBUG: "blue",
    LogLevel.INFO: "green",
    LogLevel.WARNING: "orange",
    LogLevel.ERROR: "pink",
    LogLevel.CRITICAL: "red",
}


def _jsonable(value: object) -> object:
    """Numpy arrays become lists, numpy scalars become numbers, other non-JSON values become strings."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if value is None or isinstance(value, (dict, list, tuple, str, int, float)):
        return value
    return str(value)


class Logger:
    """Writes leveled JSON records to a stream and, optionally, to a log directory."""

    def __init__(
        self,
        error_counter: Counter,
        log_level: int = LogLevel.NOTSET,
        colorized: bool = False,
        stream: TextIO | None = None,
    ) -> None:
        """
        Args:
            error_counter: Incremented on every error or critical record.
            log_level: Records below this level are dropped.
            colorized: Color the level tag on the stream (never in the log file).
            stream: Destination of records; standard error when None.
        """
        self._error_counter = error_counter
        self._log_level = log_level
        self.colorized = colorized
        self._stream = stream
        self._log_dir: str | None = None

    def _emit(self, level: LogLevel, message: str, fields: dict) -> None:
        if level < self._log_level:
            return

        err = fields.get("err")
        if isinstance(err, BaseException):
            fields["err"] = traceback.format_exception(err)

        record = {"time": time.strftime("%Y-%m-%d %H:%M:%S", time.localtime()), "level": level.name, "msg": message}
        record.update((key, _jsonable(value)) for key, value in fields.items())
        line = json.dumps(record)

        if self._log_dir is not None:
            with open(os.path.join(self._log_dir, "activity.log"), "a") as f:
                f.write(line + "\n")

        if self.colorized:
            tag = json.dumps(level.name)
            line = line.replace(f'"level": {tag}', f'"level": "{_color(level.name, _LEVEL_COLORS[level])}"', 1)
        print(line, file=self._stream or sys.stderr)

    def debug(self, message: str, **kwargs: object) -> None:
        """Logs at DEBUG; keyword arguments become record fields."""
        self._emit(LogLevel.DEBUG, message, kwargs)

    def info(self, message: str, **kwargs: object) -> None:
        """Logs at INFO; keyword arguments become record fields."""
        self._emit(LogLevel.INFO, message, kwargs)

    def warning(self, message: str, **kwargs: object) -> None:
        """Logs at WARNING; keyword arguments become record fields."""
        self._emit(LogLevel.WARNING, message, kwargs)

    def error(self, message: str, err: Exception, **kwargs: object) -> None:
        """Logs at ERROR with the traceback of err and counts the error.

        Args:
            message: The log message.
            err: The exception behind the record.
            **kwargs: Extra record fields.
        """
        self._error_counter.increment()
        self._emit(LogLevel.ERROR, message, {"err": err, **kwargs})

    def critical(self, message: str, err: Exception, **kwargs: object) -> None:
        """Logs at CRITICAL with the traceback of err and counts the error."""
        self._error_counter.increment()
        self._emit(LogLevel.CRITICAL, message, {"err": err, **kwargs})

    def get_error_count(self) -> int:
        """Returns the number of errors and criticals logged so far."""
        return self._error_counter.get()

    def set_log_dir(self, log_dir: str) -> None:
        """Also appends every record to ``<log_dir>/activity.log``.

        Raises:
            ValueError: If log_dir is not an existing directory.
        """
        if not os.path.isdir(log_dir):
            raise ValueError(f"Logging path must be a directory, received {log_dir}.")
        self._log_dir = log_dir
