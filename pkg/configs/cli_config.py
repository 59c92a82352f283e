import math
import os
from dataclasses import dataclass, fields

from configs.config_loader import ConfigLoader, ConfigLoaderException
from utils.types import Side

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")
DEFAULT_LOGGING_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "logging.yaml")


class CliConfigError(ConfigLoaderException):
    """Raised when CLI settings are missing, malformed, or inconsistent."""


def _number(name: str, value, kind=float):
    if isinstance(value, bool):
        raise CliConfigError(f"'{name}' must be a number, got {value!r}")
    try:
        converted = kind(value)
    except (TypeError, ValueError) as e:
        raise CliConfigError(f"'{name}' must be {kind.__name__}, got {value!r}") from e
    if kind is float and not math.isfinite(converted):
        raise CliConfigError(f"'{name}' must be finite, got {value!r}")
    if kind is int and converted != value and not isinstance(value, str):
        raise CliConfigError(f"'{name}' must be an integer, got {value!r}")
    return converted


@dataclass(frozen=True)
class CliConfig:
    """
    Settings of one CLI invocation.

    ``tol`` is always set; ``tol_override`` holds the --tol given on the
    command line, if any, and replaces every verification tolerance.
    """

    lam: float = 0.0
    tol: float = 1e-12
    k_min: float = 1e-2
    k_max: float = 1e2
    k_steps: int = 256
    side: Side = Side.LEFT
    seed: int = 0
    samples: int = 1000
    lambda_max: float = 3.0
    output: str = "-"
    tol_override: float | None = None

    def __post_init__(self):
        if self.lam < 0:
            raise CliConfigError(f"lambda must be >= 0, got {self.lam}")
        if self.tol <= 0:
            raise CliConfigError(f"tol must be > 0, got {self.tol}")
        if self.k_min <= 0 or self.k_min >= self.k_max:
            raise CliConfigError(f"Expected 0 < k_min < k_max, got {self.k_min}, {self.k_max}")
        if self.k_steps < 2:
            raise CliConfigError(f"k_steps must be >= 2, got {self.k_steps}")
        if self.seed < 0:
            raise CliConfigError(f"seed must be >= 0, got {self.seed}")
        if self.samples < 1:
            raise CliConfigError(f"samples must be >= 1, got {self.samples}")
        if self.lambda_max < 0:
            raise CliConfigError(f"lambda_max must be >= 0, got {self.lambda_max}")

    @classmethod
    def from_sources(cls, defaults: dict, overrides: dict | None = None) -> "CliConfig":
        """
        Merges the ``cli`` defaults with command-line values; ``None`` overrides
        are ignored.

        :raises CliConfigError: On unknown keys, malformed values, or broken invariants.
        """
        merged = dict(defaults or {})
        overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        merged.update(overrides)

        known = {f.name for f in fields(cls)}
        unknown = set(merged) - known
        if unknown:
            raise CliConfigError(f"Unknown CLI settings: {sorted(unknown)}")

        values = {}
        for name in ("lam", "tol", "k_min", "k_max", "lambda_max", "tol_override"):
            if name in merged:
                values[name] = _number(name, merged[name])
        for name in ("k_steps", "seed", "samples"):
            if name in merged:
                values[name] = _number(name, merged[name], int)
        if "side" in merged:
            try:
                values["side"] = Side(str(merged["side"]).lower())
            except ValueError as e:
                raise CliConfigError(f"side must be 'left' or 'right', got {merged['side']!r}") from e
        if "output" in merged:
            values["output"] = str(merged["output"])
        if "tol_override" in values:
            values["tol"] = values["tol_override"]
        return cls(**values)

    @classmethod
    def load(cls, config_path: str | None = None, overrides: dict | None = None) -> "CliConfig":
        return cls.from_sources(
            ConfigLoader.load_section(config_path or DEFAULT_CONFIG_PATH, "cli"), overrides
        )
