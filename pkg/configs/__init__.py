from .config_loader import (
    ConfigLoader,
    ConfigFileNotFoundError,
    ConfigFileFormatError,
    ConfigLoaderException,
)
from .cli_config import (
    CliConfig,
    CliConfigError,
    DEFAULT_CONFIG_PATH,
    DEFAULT_LOGGING_PATH,
)

__all__ = [
    "ConfigLoader",
    "ConfigFileNotFoundError",
    "ConfigFileFormatError",
    "ConfigLoaderException",
    "CliConfig",
    "CliConfigError",
    "DEFAULT_CONFIG_PATH",
    "DEFAULT_LOGGING_PATH",
]
