from .app import build_parser, run, main
from .codec import PayloadParseError

__all__ = ["build_parser", "run", "main", "PayloadParseError"]
