import logging

import pytest
import yaml
from unittest.mock import patch

from configs import DEFAULT_LOGGING_PATH
from modules.logger import (
    LogLevelValidationError,
    LoggerConfigError,
    LoggerFileError,
    Logger,
    LogLevel,
)


@pytest.fixture
def mock_yaml_config():
    """Mock YAML configuration as a dictionary."""
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "handlers": {
            "console": {"class": "logging.StreamHandler", "level": "DEBUG"},
        },
        "loggers": {"TestLogger": {"handlers": ["console"], "level": "DEBUG", "propagate": False}},
    }


@pytest.fixture
def configure_logger(mock_yaml_config):
    """Fixture to configure the logger with a dictionary configuration."""
    Logger.configure_logger(name="TestLogger", config_path=mock_yaml_config)
    yield
    Logger._logger = None


def test_configure_logger_with_dict(mock_yaml_config):
    """Test configuring the logger with a dictionary."""
    Logger.configure_logger(name="TestLogger", config_path=mock_yaml_config)
    assert Logger._logger is not None
    assert Logger._logger.name == "TestLogger"


def test_configure_logger_with_yaml_file(tmp_path, mock_yaml_config):
    """Test configuring the logger from a YAML file on disk."""
    path = tmp_path / "logging.yaml"
    path.write_text(yaml.safe_dump(mock_yaml_config))
    Logger.configure_logger(name="TestLogger", config_path=str(path))
    assert Logger._logger.level == logging.DEBUG


def test_configure_logger_with_packaged_config():
    """The shipped logging.yaml keeps the console at WARNING on stderr."""
    Logger.configure_logger(name="junction", config_path=DEFAULT_LOGGING_PATH)
    handlers = Logger._logger.handlers
    assert len(handlers) == 1
    assert handlers[0].level == logging.WARNING
    assert Logger._logger.propagate is False


def test_invalid_config_path():
    """Test configure_logger with a dictionary lacking 'version'."""
    with pytest.raises(LoggerConfigError, match="Invalid config_path"):
        Logger.configure_logger(name="TestLogger", config_path={"invalid": "data"})


def test_missing_config_file(tmp_path):
    """A path that does not exist is rejected."""
    with pytest.raises(LoggerConfigError, match="Invalid config_path"):
        Logger.configure_logger(name="TestLogger", config_path=str(tmp_path / "absent.yaml"))


def test_malformed_config_file(tmp_path):
    """A YAML syntax error surfaces as LoggerConfigError."""
    path = tmp_path / "broken.yaml"
    path.write_text("version: [1\n")
    with pytest.raises(LoggerConfigError, match="Failed to load logging configuration"):
        Logger.configure_logger(name="TestLogger", config_path=str(path))


def test_log_info_with_valid_message(configure_logger):
    """Test log_info logs a valid informational message."""
    with patch("logging.Logger.info") as mock_info:
        Logger.log("This is an informational message.", LogLevel.INFO)
        mock_info.assert_called_once_with("This is an informational message.")


def test_log_without_configuring_logger():
    """Logging before configuration is a silent no-op."""
    with patch("logging.Logger.info") as mock_info, patch("logging.Logger.error") as mock_error:
        Logger.log("This should not log.", LogLevel.INFO)
        Logger.log_error("Neither should this.")
        mock_info.assert_not_called()
        mock_error.assert_not_called()


@pytest.mark.parametrize(
    "method, level_method",
    [
        ("log_debug", "debug"),
        ("log_info", "info"),
        ("log_warning", "warning"),
        ("log_error", "error"),
        ("log_critical", "critical"),
    ],
)
def test_level_helpers_dispatch(configure_logger, method, level_method):
    """Each helper forwards to the matching logging.Logger method."""
    with patch(f"logging.Logger.{level_method}") as mock_method:
        getattr(Logger, method)("message")
        mock_method.assert_called_once_with("message")


def test_log_info_with_empty_message(configure_logger):
    """Test log_info with an empty message."""
    with patch("logging.Logger.info") as mock_info:
        Logger.log("", LogLevel.INFO)
        mock_info.assert_called_once_with("")


def test_log_error_with_large_message(configure_logger):
    """Test log_error with a very large message."""
    large_message = "E" * 10**6
    with patch("logging.Logger.error") as mock_error:
        Logger.log_error(large_message)
        mock_error.assert_called_once_with(large_message)


def test_log_with_non_string_message(configure_logger):
    """Non-string messages are converted with str()."""
    with patch("logging.Logger.error") as mock_error:
        Logger.log(3.14159, LogLevel.ERROR)  # type: ignore
        mock_error.assert_called_once_with("3.14159")
    with patch("logging.Logger.info") as mock_info:
        Logger.log(None, LogLevel.INFO)  # type: ignore
        mock_info.assert_called_once_with("None")


def test_configure_logger_with_invalid_level():
    """Test logger configuration with an invalid log level."""
    with pytest.raises(LogLevelValidationError, match="Invalid log level: INVALID_LEVEL"):
        Logger.configure_logger(name="InvalidLevelLogger", level="INVALID_LEVEL")  # type: ignore


@pytest.mark.parametrize("name, expected", [("debug", LogLevel.DEBUG), (" Warning ", LogLevel.WARNING)])
def test_level_from_name(name, expected):
    assert LogLevel.from_name(name) is expected


def test_level_from_unknown_name():
    with pytest.raises(LogLevelValidationError, match="Invalid log level: chatty"):
        LogLevel.from_name("chatty")


def test_level_for_verbosity():
    assert LogLevel.for_verbosity(True) is LogLevel.DEBUG
    assert LogLevel.for_verbosity(False) is LogLevel.WARNING


def test_set_level(configure_logger):
    """set_level moves the logger and all of its handlers."""
    Logger.set_level(LogLevel.ERROR)
    assert Logger._logger.level == logging.ERROR
    assert all(h.level == logging.ERROR for h in Logger._logger.handlers)
    with pytest.raises(LogLevelValidationError):
        Logger.set_level("LOUD")  # type: ignore


def test_reconfiguring_does_not_duplicate_handlers():
    """Running configure_logger twice leaves one console handler."""
    Logger.configure_logger(name="ReconfiguredLogger")
    Logger.configure_logger(name="ReconfiguredLogger")
    assert len(Logger._logger.handlers) == 1


def test_default_console_goes_to_stderr(capsys):
    """Warnings reach stderr and nothing is written to stdout."""
    Logger.configure_logger(name="StderrLogger", level=LogLevel.WARNING)
    Logger.log_warning("careful")
    Logger.log_info("quiet")
    captured = capsys.readouterr()
    assert "careful" in captured.err
    assert "quiet" not in captured.err
    assert captured.out == ""


def test_log_file_receives_records(tmp_path):
    """A log file in a missing directory is created and written."""
    log_file = tmp_path / "logs" / "junction.log"
    Logger.configure_logger(name="FileLogger", log_file=str(log_file), level=LogLevel.INFO)
    Logger.log_info("Ensuring file is actually written.")
    for handler in Logger._logger.handlers:
        handler.flush()
    assert "Ensuring file is actually written." in log_file.read_text()


def test_log_directory_blocked_by_file(tmp_path):
    """A regular file where the log directory should be is a LoggerFileError."""
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    with pytest.raises(LoggerFileError, match="Failed to create log directory"):
        Logger.configure_logger(name="TestLogger", log_file=str(blocker / "sub" / "x.log"))


def test_log_with_incorrect_method_call():
    """Test calling a non-existent logging method."""
    with pytest.raises(AttributeError):
        Logger.log_invalid_attibute("This method does not exist")  # type: ignore


if __name__ == "__main__":
    pytest.main()
