import os
import logging
from logging.config import dictConfig
from modules.logger.log_levels import LogLevel, LogLevelValidationError


class LoggerError(Exception):
    """Base exception for Logger errors."""

    pass


class LoggerConfigError(LoggerError):
    """Raised when there is an error in loading or applying the configuration."""

    pass


class LoggerFileError(LoggerError):
    """Raised when there is an issue with log file operations."""

    pass


class Logger:
    """
    Process-wide logging facade for the junction library and its CLI.

    Until ``configure_logger`` is called every ``log_*`` call is a no-op, so
    the numerical code can log freely without producing output for library
    users who never opted in. Console output goes to stderr; stdout belongs to
    command results.
    """

    _logger: logging.Logger | None = None
    _log_file: str | None = None

    FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    @classmethod
    def _load_yaml_config(cls, config_path: str) -> dict:
        """
        Loads the YAML configuration file for logging using ConfigLoader.
        """
        # configs depends on modules for its exit codes
        from configs.config_loader import (
            ConfigLoader,
            ConfigFileNotFoundError,
            ConfigFileFormatError,
        )

        try:
            return ConfigLoader.load_config(config_path)
        except (ConfigFileNotFoundError, ConfigFileFormatError) as e:
            raise LoggerConfigError(f"Failed to load logging configuration: {e}") from e
        except Exception as e:
            raise LoggerConfigError(
                f"Unexpected error loading logging configuration: {e}"
            ) from e

    @classmethod
    def _ensure_log_directory(cls) -> None:
        """
        Ensures that the directory of the log file exists.
        """
        if cls._log_file:
            directory = os.path.dirname(cls._log_file)
            if not directory:
                return
            try:
                os.makedirs(directory, exist_ok=True)
            except PermissionError as e:
                raise PermissionError(
                    f"Cannot write to directory '{directory}': {e}"
                ) from e
            except Exception as e:
                raise LoggerFileError(
                    f"Failed to create log directory '{directory}': {e}"
                ) from e

    @classmethod
    def _validate_log_level(cls, level: LogLevel) -> None:
        if not isinstance(level, LogLevel):
            raise LogLevelValidationError(f"Invalid log level: {level}")

    @classmethod
    def _validate_message(cls, message) -> str:
        try:
            return str(message)
        except Exception as e:
            raise TypeError(f"Message cannot be converted to string: {message}") from e

    @classmethod
    def _apply_dict_config(cls, name: str, config: dict) -> None:
        if not config or "version" not in config:
            raise LoggerConfigError("Invalid config_path: 'version' key is missing.")
        try:
            dictConfig(config)
        except Exception as e:
            raise LoggerConfigError(f"Failed to apply logging configuration: {e}") from e
        cls._logger = logging.getLogger(name)

    @classmethod
    def configure_logger(
        cls,
        name: str,
        config_path: dict | str | None = None,
        level: LogLevel = LogLevel.WARNING,
        log_file: str | None = None,
    ) -> None:
        """
        Configures the logger from a dictConfig mapping, a YAML file, or defaults.

        :param name:        Name of the logger.
        :param config_path: Path/dict of a dictConfig configuration. If None, defaults are used.
        :param level:       Logging level when no config is provided.
        :param log_file:    Optional file receiving the same records as the console.
        :raises LoggerConfigError: If the config fails to load or apply.
        """
        cls._validate_log_level(level)
        cls._log_file = log_file

        if config_path:
            if isinstance(config_path, dict):
                cls._apply_dict_config(name, config_path)
                return
            if os.path.exists(config_path):
                cls._apply_dict_config(name, cls._load_yaml_config(config_path))
                return
            raise LoggerConfigError(f"Invalid config_path: {config_path}")

        cls._ensure_log_directory()

        formatter = logging.Formatter(cls.FORMAT)
        handlers: list[logging.Handler] = [logging.StreamHandler()]
        if cls._log_file:
            handlers.append(logging.FileHandler(cls._log_file))

        logger = logging.getLogger(name)
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
            handler.close()
        for handler in handlers:
            handler.setLevel(level.value)
            handler.setFormatter(formatter)
            logger.addHandler(handler)
        logger.setLevel(level.value)
        logger.propagate = False
        cls._logger = logger

    @classmethod
    def set_level(cls, level: LogLevel) -> None:
        """Changes the level of the configured logger and its handlers."""
        cls._validate_log_level(level)
        if cls._logger:
            cls._logger.setLevel(level.value)
            for handler in cls._logger.handlers:
                handler.setLevel(level.value)

    @classmethod
    def log(cls, message, level: LogLevel) -> None:
        """
        Logs a message at the specified log level.
        """
        if cls._logger:
            message_str = cls._validate_message(message)

            if level == LogLevel.INFO:
                cls._logger.info(message_str)
            elif level == LogLevel.DEBUG:
                cls._logger.debug(message_str)
            elif level == LogLevel.WARNING:
                cls._logger.warning(message_str)
            elif level == LogLevel.ERROR:
                cls._logger.error(message_str)
            elif level == LogLevel.CRITICAL:
                cls._logger.critical(message_str)

    @classmethod
    def log_info(cls, message) -> None:
        """Logs an informational message."""
        cls.log(message, LogLevel.INFO)

    @classmethod
    def log_debug(cls, message) -> None:
        """Logs a debug message."""
        cls.log(message, LogLevel.DEBUG)

    @classmethod
    def log_warning(cls, message) -> None:
        """Logs a warning message."""
        cls.log(message, LogLevel.WARNING)

    @classmethod
    def log_error(cls, message) -> None:
        """Logs an error message."""
        cls.log(message, LogLevel.ERROR)

    @classmethod
    def log_critical(cls, message) -> None:
        """Logs a critical message."""
        cls.log(message, LogLevel.CRITICAL)
