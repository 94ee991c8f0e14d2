"""Unit tests for the Logger class.

This module contains unit tests for the `Logger` class, which writes JSON
lines with severity levels, optional colorized level tags, numpy-aware field
conversion and error counting.
"""

import json
import os
import tempfile
import time
from unittest.mock import MagicMock

import numpy as np
import pytest
from freezegun import freeze_time
from steinerchase.counter import Counter
from steinerchase.logger import Logger, LogLevel, _color


@pytest.fixture
def logger():
    """Provides a Logger instance for testing without colorization."""
    count = MagicMock(spec=Counter)
    return Logger(count)


@pytest.fixture
def logger_color():
    """Provides a Logger instance for testing with colorization enabled."""
    count = MagicMock(spec=Counter)
    return Logger(error_counter=count, colorized=True)


def test_debug_log(capsys, logger):
    """Tests that debug lines go to standard error, leaving standard output alone.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
        logger: Logger instance for testing.
    """
    logger.debug("Built path program", variables=12)
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "DEBUG" in captured.err
    assert "Built path program" in captured.err
    assert '"variables": 12' in captured.err


def test_info_with_err(capsys, logger):
    """Tests logging an info message with an error object.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
        logger: Logger instance for testing.
    """
    logger.info("Run complete", ratio=1.5, err=OSError("Manually creating an OS Error"))
    captured = capsys.readouterr()
    assert "INFO" in captured.err
    assert '"ratio": 1.5' in captured.err
    assert "OSError: Manually creating an OS Error" in captured.err


def test_warning_log(capsys, logger):
    """Tests logging a warning message with several fields.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
        logger: Logger instance for testing.
    """
    logger.warning("Fix-up exceeds the estimator error budget", chaser="steiner", step=3)
    captured = capsys.readouterr()
    assert "WARNING" in captured.err
    assert '"chaser": "steiner"' in captured.err
    assert '"step": 3' in captured.err


def test_error_log_counts(capsys):
    """Tests that error and critical logs record the traceback and bump the counter.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
    """
    count = Counter()
    logger = Logger(count)
    logger.error("Solver failed", OSError("Manually creating an OS Error for testing"), step=4)
    logger.critical("Run aborted", ValueError("bad input"))
    captured = capsys.readouterr()
    assert "ERROR" in captured.err
    assert "CRITICAL" in captured.err
    assert '"step": 4' in captured.err
    assert "OSError: Manually creating an OS Error for testing" in captured.err
    assert logger.get_error_count() == 2


def test_numpy_fields_are_plain_json(capsys, logger):
    """Tests that numpy arrays and scalars are logged as plain lists and numbers.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
        logger: Logger instance for testing.
    """
    logger.info("Step complete", position=np.array([0.5, -1.0]), movement=np.float64(0.25), step=np.int64(2))
    line = json.loads(capsys.readouterr().err.strip())
    assert line["position"] == [0.5, -1.0]
    assert line["movement"] == 0.25
    assert line["step"] == 2


def test_invalid_json_type_bytes(capsys, logger):
    """Tests logging with a bytes keyword argument, which is stringified.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
        logger: Logger instance for testing.
    """
    logger.debug("This is a random message", attempt=b"forming a bytes message")
    captured = capsys.readouterr()
    assert "b'forming a bytes message'" in captured.err
    assert "TypeError" not in captured.err


def test_level_filter(capsys):
    """Tests that messages below the configured level are dropped.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
    """
    logger = Logger(MagicMock(spec=Counter), log_level=LogLevel.WARNING)
    logger.debug("hidden")
    logger.info("hidden too")
    logger.warning("shown")
    captured = capsys.readouterr()
    assert "hidden" not in captured.err
    assert "shown" in captured.err


def test_log_level_from_name():
    """Tests looking up log levels by name."""
    assert LogLevel.from_name("debug") == LogLevel.DEBUG
    assert LogLevel.from_name("CRITICAL") == LogLevel.CRITICAL
    with pytest.raises(ValueError):
        LogLevel.from_name("chatty")


def test_colorized_levels(capsys, logger_color):
    """Tests that colorized loggers wrap the level tag in ANSI codes.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
        logger_color: Colorized Logger instance for testing.
    """
    logger_color.info("Run complete", ratio=1.0)
    logger_color.error("Solver failed", err=OSError("boom"))
    captured = capsys.readouterr()
    assert _color(msg="INFO", color="green") in captured.err
    assert _color(msg="ERROR", color="pink") in captured.err


@freeze_time(time_to_freeze="2025-05-16 12:34:56", tz_offset=0)
def test_timestamp(capsys, logger):
    """Tests that every line carries the local time.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
        logger: Logger instance for testing.
    """
    logger.info("tick")
    line = json.loads(capsys.readouterr().err.strip())
    assert line["time"] == time.strftime("%Y-%m-%d %H:%M:%S", time.localtime())
    assert line["time"].startswith("2025-05-1")
    assert list(line)[:3] == ["time", "level", "msg"]


def test_set_log_dir_rejects_files():
    """Tests that set_log_dir refuses paths that are not directories."""
    logger = Logger(error_counter=MagicMock())
    with tempfile.NamedTemporaryFile() as f:
        with pytest.raises(ValueError):
            logger.set_log_dir(f.name)
    with pytest.raises(ValueError):
        logger.set_log_dir("/definitely/not/here")


def test_log_to_file(capsys):
    """Tests that lines are appended to activity.log in the log directory.

    Args:
        capsys: Pytest fixture to capture stdout/stderr.
    """
    logger = Logger(error_counter=MagicMock())
    with tempfile.TemporaryDirectory() as temp_dir:
        logger.set_log_dir(temp_dir)
        logger.info("Level chosen", R=3.5)
        logger.info("Level chosen", R=4.0)

        with open(os.path.join(temp_dir, "activity.log"), "r") as f:
            lines = f.read().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["R"] == 4.0
    assert "Level chosen" in capsys.readouterr().err


def test_custom_stream():
    """Tests that a logger can write to an explicit stream."""
    stream = MagicMock()
    logger = Logger(error_counter=MagicMock(), stream=stream)
    logger.info("to the stream")
    assert stream.write.called


def test_get_error_count():
    """Tests retrieving the error count from the Logger."""
    count = MagicMock()
    count.get.return_value = 5
    logger = Logger(error_counter=count)
    assert logger.get_error_count() == 5
