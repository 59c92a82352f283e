from .exit_codes import ExitCode
from .exception_handler import ExceptionHandler

__all__ = ["ExceptionHandler", "ExitCode"]
