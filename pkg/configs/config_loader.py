import os

import yaml

from modules.exception_handler.exit_codes import ExitCode


class ConfigLoaderException(Exception):
    """Base exception for configuration problems; always an input error (exit 3)."""

    exit_code = ExitCode.INPUT_ERROR


class ConfigFileNotFoundError(ConfigLoaderException):
    """Raised when the configuration file is not found."""

    def __init__(self, file_path: str):
        super().__init__(f"Configuration file not found: {file_path}")
        self.file_path = file_path


class ConfigFileFormatError(ConfigLoaderException):
    """Raised when the file is not valid YAML or not shaped as expected."""

    def __init__(self, file_path: str, error: Exception):
        super().__init__(f"Invalid YAML format in file {file_path}: {error}")
        self.file_path = file_path
        self.error = error


class ConfigLoader:
    """
    Reads the YAML files behind the CLI defaults, the extension tolerances,
    the verification tolerances and the logging setup.

    Every file is a mapping of sections (cli, extensions, verify) or a
    logging dictConfig; sections are read one at a time with load_section.
    """

    @staticmethod
    def load_config(file_path: str | os.PathLike) -> dict:
        """
        Loads a YAML configuration file.

        :param file_path: Path to the YAML file.
        :return: The parsed document; an empty file gives an empty dict.
        :raises ConfigFileNotFoundError: If the file does not exist.
        :raises ConfigFileFormatError: If the YAML format is invalid.
        :raises ConfigLoaderException: If the file cannot be read.
        """
        path = os.fspath(file_path)
        try:
            with open(path, "r", encoding="utf-8") as file:
                document = yaml.safe_load(file)
        except FileNotFoundError:
            raise ConfigFileNotFoundError(path)
        except yaml.YAMLError as e:
            raise ConfigFileFormatError(path, e)
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigLoaderException(f"Cannot read configuration file {path}: {e}") from e
        return {} if document is None else document

    @staticmethod
    def load_section(file_path: str | os.PathLike, section: str) -> dict:
        """
        Loads one top-level mapping of a YAML configuration file.

        :param file_path: Path to the YAML file.
        :param section: Name of the top-level key.
        :return: The section, or an empty dict when it is absent.
        :raises ConfigFileFormatError: If the document or the section is not a mapping.
        """
        config = ConfigLoader.load_config(file_path)
        if not isinstance(config, dict):
            raise ConfigFileFormatError(os.fspath(file_path), TypeError("top level is not a mapping"))
        value = config.get(section)
        if value is None:
            return {}
        if not isinstance(value, dict):
            raise ConfigFileFormatError(
                os.fspath(file_path), TypeError(f"section '{section}' is not a mapping")
            )
        return value
