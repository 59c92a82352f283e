import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass
from enum import Enum

import numpy as np

from core.extensions import arg
from modules.exception_handler import ExitCode
from utils.types import (
    INFINITY,
    AlphaVector,
    C2Matrix,
    Infinity,
    RhoPair,
    ScatteringResult,
)

CSV_HEADER = ("k", "re_r", "im_r", "re_t", "im_t", "flux_residual", "arg_t")
CSV_DIGITS = 12


class PayloadParseError(Exception):
    """Raised when a JSON payload is malformed or has the wrong shape."""

    exit_code = ExitCode.INPUT_ERROR


# --- decoding ---------------------------------------------------------------


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise PayloadParseError(f"Malformed JSON payload: {e}") from e


def _real(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise PayloadParseError(f"{what} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise PayloadParseError(f"{what} must be finite, got {value!r}")
    return float(value)


def parse_complex(value, what: str = "value") -> complex:
    """A number or a pair [re, im]."""
    if isinstance(value, list):
        if len(value) != 2:
            raise PayloadParseError(f"{what} must be [re, im], got {value!r}")
        return complex(_real(value[0], what), _real(value[1], what))
    return complex(_real(value, what))


def _unwrap(payload, *keys):
    if isinstance(payload, dict):
        for key in keys:
            if key in payload:
                return payload[key]
        raise PayloadParseError(f"Expected one of the keys {list(keys)}, got {sorted(payload)}")
    return payload


def parse_matrix(payload) -> C2Matrix:
    """A 2x2 nested list of complex entries, optionally under "matrix" or "u"."""
    rows = _unwrap(payload, "matrix", "u", "U")
    if not (isinstance(rows, list) and len(rows) == 2 and all(isinstance(r, list) and len(r) == 2 for r in rows)):
        raise PayloadParseError(f"Expected a 2x2 matrix, got {rows!r}")
    return C2Matrix(
        *(parse_complex(rows[i][j], f"u{i + 1}{j + 1}") for i in range(2) for j in range(2))
    )


def parse_alpha(payload) -> AlphaVector:
    """Four complex components, optionally under "alpha"."""
    values = _unwrap(payload, "alpha")
    if not (isinstance(values, list) and len(values) == 4):
        raise PayloadParseError(f"alpha must have 4 components, got {values!r}")
    return AlphaVector(*(parse_complex(v, f"alpha{i + 1}") for i, v in enumerate(values)))


def _extended(value, what: str):
    if isinstance(value, str):
        if value.strip().lower() == "inf":
            return INFINITY
        raise PayloadParseError(f"{what} must be a number or \"inf\", got {value!r}")
    return _real(value, what)


def parse_rho(payload) -> RhoPair:
    """[rho_plus, rho_minus], {"rho": [...]} or {"rho_plus": .., "rho_minus": ..}."""
    if isinstance(payload, dict) and "rho_plus" in payload and "rho_minus" in payload:
        pair = [payload["rho_plus"], payload["rho_minus"]]
    else:
        pair = _unwrap(payload, "rho")
        if isinstance(pair, dict):
            return parse_rho(pair)
    if not (isinstance(pair, list) and len(pair) == 2):
        raise PayloadParseError(f"rho must be [rho_plus, rho_minus], got {pair!r}")
    return RhoPair(
        rho_plus=_extended(pair[0], "rho_plus"), rho_minus=_extended(pair[1], "rho_minus")
    )


def parse_extension(payload) -> AlphaVector | RhoPair:
    """{"alpha": ...} or a rho form; bare lists of length 4 and 2 are alpha and rho."""
    if isinstance(payload, dict):
        if "alpha" in payload:
            return parse_alpha(payload)
        if "rho" in payload or "rho_plus" in payload:
            return parse_rho(payload)
        raise PayloadParseError(f"Extension payload needs 'alpha' or 'rho', got {sorted(payload)}")
    if isinstance(payload, list) and len(payload) == 4:
        return parse_alpha(payload)
    if isinstance(payload, list) and len(payload) == 2:
        return parse_rho(payload)
    raise PayloadParseError(f"Unrecognized extension payload: {payload!r}")


# --- encoding ---------------------------------------------------------------


def _float(x: float):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    # no negative zeros in output
    return x + 0.0


def encode_complex(z: complex) -> list:
    z = complex(z)
    return [_float(z.real), _float(z.imag)]


def encode_matrix(m: C2Matrix) -> list:
    return [[encode_complex(m.m11), encode_complex(m.m12)], [encode_complex(m.m21), encode_complex(m.m22)]]


def encode_extended(x) -> float | str:
    return str(x) if isinstance(x, Infinity) else _float(x)


def to_jsonable(value):
    """Recursively converts results into JSON-ready values."""
    if isinstance(value, Infinity):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return encode_complex(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _float(value)
    if isinstance(value, C2Matrix):
        return encode_matrix(value)
    if is_dataclass(value):
        return {k: to_jsonable(v) for k, v in asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"Cannot encode {type(value).__name__} as JSON")


def dumps(document) -> str:
    """Deterministic JSON: insertion-ordered keys, shortest round-trip floats."""
    return json.dumps(to_jsonable(document), indent=2, allow_nan=False) + "\n"


def _csv_number(x: float) -> str:
    return format(float(x) + 0.0, f".{CSV_DIGITS}g")


def scattering_csv(results: list[ScatteringResult], phase_tol: float) -> str:
    """
    One row per wavenumber. arg_t is in [0, 2 pi) and left empty where
    |t| <= phase_tol.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for res in results:
        phase = _csv_number(arg(res.t)) if abs(res.t) > phase_tol else ""
        writer.writerow(
            [
                _csv_number(res.k),
                _csv_number(res.r.real),
                _csv_number(res.r.imag),
                _csv_number(res.t.real),
                _csv_number(res.t.imag),
                _csv_number(res.flux_residual),
                phase,
            ]
        )
    return buffer.getvalue()
