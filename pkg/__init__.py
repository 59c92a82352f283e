from .cli import __all__ as cli_all
from .configs import __all__ as configs_all
from .core import __all__ as core_all
from .modules import __all__ as modules_all
from .utils import __all__ as utils_all

__all__ = cli_all + configs_all + core_all + modules_all + utils_all  # type: ignore
