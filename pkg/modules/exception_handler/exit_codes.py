from enum import IntEnum


class ExitCode(IntEnum):
    """
    Enumeration of the process exit codes of the command-line frontend.

    Attributes:
        SUCCESS: The command ran and every check passed.
        VALIDATION_FAILURE: Input was well-formed but violated a mathematical
            requirement (non-unitary matrix, Class alpha failure, wrong
            extension family, flux or verification failure).
        INPUT_ERROR: The payload could not be parsed or the configuration
            is invalid.
    """

    SUCCESS = 0
    VALIDATION_FAILURE = 2
    INPUT_ERROR = 3
