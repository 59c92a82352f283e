from .exception_handler import __all__ as exception_handler_all
from .logger import __all__ as logger_all

__all__ = exception_handler_all + logger_all  # type: ignore
