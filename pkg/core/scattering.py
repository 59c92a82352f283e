import cmath
import math

import numpy as np

from core.extensions import (
    TOL_CLASS_ALPHA,
    arg,
    extract_phase,
    normalize_angle,
    require_class_alpha,
)
from modules.exception_handler import ExitCode
from modules.logger import Logger
from utils.types import (
    AlphaVector,
    BoundState,
    Infinity,
    Island,
    JunctionGeometry,
    RhoPair,
    ScatteringResult,
    Side,
)

TOL_PHASE = 1e-12

_W = np.array([[1.0, 1.0], [1j, -1j]], dtype=complex)
_W_INV = np.array([[0.5, -0.5j], [0.5, 0.5j]], dtype=complex)


class ScatteringError(Exception):
    """Base exception for scattering and bound-state computations."""

    exit_code = ExitCode.VALIDATION_FAILURE


class InvalidWavenumberError(ScatteringError):
    """Raised when a wavenumber is not a finite positive number."""


class SingularSystemError(ScatteringError):
    """Raised when the matching system has no unique solution."""


class UndefinedPhaseError(ScatteringError):
    """Raised when arg t is requested for a (numerically) vanishing t."""


def _wavenumbers(k) -> np.ndarray:
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    if ks.ndim != 1 or ks.size == 0:
        raise InvalidWavenumberError("Expected a non-empty 1-D set of wavenumbers")
    if not np.all(np.isfinite(ks)) or np.any(ks <= 0):
        raise InvalidWavenumberError(f"Wavenumbers must be finite and > 0, got {ks[ks <= 0][:3]}")
    return ks


def k_grid(k_min: float, k_max: float, steps: int) -> np.ndarray:
    """
    Log-spaced wavenumbers from k_min to k_max, both included.

    :raises InvalidWavenumberError: If the bounds are not 0 < k_min < k_max.
    :raises ValueError: If steps < 2.
    """
    if steps < 2:
        raise ValueError(f"A grid needs at least 2 points, got {steps}")
    if not (0 < k_min < k_max) or not math.isfinite(k_max):
        raise InvalidWavenumberError(f"Expected 0 < k_min < k_max, got {k_min}, {k_max}")
    return np.geomspace(k_min, k_max, steps)


def transfer_matrices(alpha: AlphaVector, geom: JunctionGeometry, ks: np.ndarray) -> np.ndarray:
    """
    Plane-wave transfer matrices T(k), shape (n, 2, 2), mapping the left
    amplitudes (a, b) of a e^{ikx} + b e^{-ikx} to the right ones.
    """
    b = alpha.boundary_matrix().to_array()
    n = ks.size
    d = np.zeros((n, 2, 2), dtype=complex)
    d[:, 0, 0] = 1.0
    d[:, 1, 1] = ks
    d_inv = np.zeros_like(d)
    d_inv[:, 0, 0] = 1.0
    d_inv[:, 1, 1] = 1.0 / ks
    e = np.zeros_like(d)
    e[:, 0, 0] = np.exp(-1j * ks * geom.lam)
    e[:, 1, 1] = np.exp(1j * ks * geom.lam)
    return e @ _W_INV @ d_inv @ b @ d @ _W @ e


def _alpha_amplitudes(alpha: AlphaVector, geom: JunctionGeometry, ks: np.ndarray):
    t = transfer_matrices(alpha, geom, ks)
    t12, t21, t22 = t[:, 0, 1], t[:, 1, 0], t[:, 1, 1]
    if np.any(t22 == 0) or not np.all(np.isfinite(t)):
        raise SingularSystemError("Matching system is singular (T22 = 0)")
    # det T = det B_alpha for every k; the entrywise product cancels badly at large k
    det = alpha.boundary_matrix().det()
    return -t21 / t22, det / t22, t12 / t22, 1.0 / t22


def _robin_reflection(rho, ks: np.ndarray, lam: float, side: Side) -> np.ndarray:
    phase = np.exp(-2j * ks * lam)
    if isinstance(rho, Infinity):
        return -phase
    ik = 1j * ks
    if side is Side.LEFT:
        return phase * (ik - rho) / (ik + rho)
    return phase * (ik + rho) / (ik - rho)


def _rho_amplitudes(rho: RhoPair, geom: JunctionGeometry, ks: np.ndarray):
    zeros = np.zeros(ks.size, dtype=complex)
    r_left = _robin_reflection(rho.rho_minus, ks, geom.lam, Side.LEFT)
    r_right = _robin_reflection(rho.rho_plus, ks, geom.lam, Side.RIGHT)
    return r_left, zeros, r_right, zeros.copy()


def amplitudes(ext: AlphaVector | RhoPair, geom: JunctionGeometry, k):
    """
    (r_L, t_L, r_R, t_R) as arrays over the wavenumbers k.

    Left incidence: e^{ikx} + r_L e^{-ikx} on the left, t_L e^{ikx} on the
    right. Right incidence mirrors it with e^{-ikx} coming in from +infinity.

    :raises InvalidWavenumberError: If any k is not finite and positive.
    :raises ClassAlphaError: If an alpha vector is not in Class alpha.
    :raises SingularSystemError: If the matching system degenerates.
    """
    ks = _wavenumbers(k)
    if isinstance(ext, RhoPair):
        return _rho_amplitudes(ext, geom, ks)
    require_class_alpha(ext, TOL_CLASS_ALPHA)
    return _alpha_amplitudes(ext, geom, ks)


def scatter_sweep(
    ext: AlphaVector | RhoPair, geom: JunctionGeometry, ks, side: Side = Side.LEFT
) -> list[ScatteringResult]:
    """Reflection and transmission at every k, in the order given."""
    k_values = _wavenumbers(ks)
    r_l, t_l, r_r, t_r = amplitudes(ext, geom, k_values)
    r, t = (r_l, t_l) if side is Side.LEFT else (r_r, t_r)
    flux = np.abs(np.abs(r) ** 2 + np.abs(t) ** 2 - 1.0)
    Logger.log_debug(
        f"scatter_sweep: {k_values.size} points, side={side.value}, max flux residual={flux.max():.2e}"
    )
    return [
        ScatteringResult(k=float(k), side=side, r=complex(ri), t=complex(ti), flux_residual=float(f))
        for k, ri, ti, f in zip(k_values, r, t, flux)
    ]


def scatter(
    ext: AlphaVector | RhoPair, geom: JunctionGeometry, k: float, side: Side = Side.LEFT
) -> ScatteringResult:
    return scatter_sweep(ext, geom, [k], side)[0]


def smatrix_sweep(ext: AlphaVector | RhoPair, geom: JunctionGeometry, ks) -> np.ndarray:
    """S(k) for every k, shape (n, 2, 2)."""
    r_l, t_l, r_r, t_r = amplitudes(ext, geom, ks)
    s = np.empty((r_l.size, 2, 2), dtype=complex)
    s[:, 0, 0], s[:, 0, 1] = r_l, t_r
    s[:, 1, 0], s[:, 1, 1] = t_l, r_r
    return s


def smatrix(ext: AlphaVector | RhoPair, geom: JunctionGeometry, k: float) -> np.ndarray:
    """
    S(k) = [[r_L, t_R], [t_L, r_R]]: incoming (left, right) amplitudes to
    outgoing (left, right) amplitudes.
    """
    return smatrix_sweep(ext, geom, [k])[0]


def unitarity_defect(s: np.ndarray) -> float:
    """max |S^dagger S - I| entrywise; accepts one matrix or a stack."""
    product = np.conj(np.swapaxes(s, -1, -2)) @ s
    return float(np.max(np.abs(product - np.eye(2))))


def transmission_phase(
    ext: AlphaVector | RhoPair,
    geom: JunctionGeometry,
    k: float,
    side: Side = Side.LEFT,
    tol: float = TOL_PHASE,
) -> float:
    """
    arg t in [0, 2 pi).

    Multiplying alpha by e^{i phi} shifts the left-incidence phase by +phi
    and the right-incidence phase by -phi; |r| and |t| stay put.

    :raises UndefinedPhaseError: If |t| <= tol, which includes every rho extension.
    """
    if isinstance(ext, RhoPair):
        raise UndefinedPhaseError("Decoupled (rho) extensions do not transmit: t = 0")
    t = scatter(ext, geom, k, side).t
    if abs(t) <= tol:
        raise UndefinedPhaseError(f"|t| = {abs(t):.3e} <= {tol:.1e}; arg t is undefined")
    return arg(t)


def relative_phase(
    alpha0: AlphaVector,
    alpha1: AlphaVector,
    geom: JunctionGeometry,
    k: float,
    side: Side = Side.LEFT,
) -> float:
    """Phase of the wave through alpha1 relative to the wave through alpha0, in [0, 2 pi)."""
    return normalize_angle(
        transmission_phase(alpha1, geom, k, side) - transmission_phase(alpha0, geom, k, side)
    )


def _positive_roots(a: float, b: float, c: float) -> list[tuple[float, int]]:
    """Positive real roots of a x^2 + b x + c with multiplicities."""
    if a == 0:
        if b == 0:
            return []
        return [(-c / b, 1)]

    disc = b * b - 4.0 * a * c
    if abs(disc) <= 1e-14 * max(b * b, abs(4.0 * a * c)):
        roots = [(-b / (2.0 * a), 2)]
    elif disc < 0:
        return []
    else:
        q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
        roots = [(q / a, 1)]
        if q != 0:
            roots.append((c / q, 1))
    return [(x, m) for x, m in roots if math.isfinite(x) and x > 0]


def _alpha_bound_states(alpha: AlphaVector) -> list[BoundState]:
    require_class_alpha(alpha, TOL_CLASS_ALPHA)
    form = extract_phase(alpha)
    phase = cmath.exp(1j * form.theta)
    states = []
    for kappa, multiplicity in _positive_roots(form.a2, form.a1 + form.a4, form.a3):
        right = phase * (form.a1 + form.a2 * kappa)
        states.append(
            BoundState(
                kappa=kappa,
                energy=-kappa * kappa,
                left_amplitude=1.0 + 0j,
                right_amplitude=right,
                island=Island.BOTH if right != 0 else Island.LEFT,
                multiplicity=multiplicity,
            )
        )
    return states


def _rho_bound_states(rho: RhoPair) -> list[BoundState]:
    states = []
    # left island: e^{kappa (x + lam)} has psi' = kappa psi at -lam
    if not isinstance(rho.rho_minus, Infinity) and rho.rho_minus > 0:
        kappa = float(rho.rho_minus)
        states.append(BoundState(kappa, -kappa * kappa, 1.0 + 0j, 0j, Island.LEFT))
    # right island: e^{-kappa (x - lam)} has psi' = -kappa psi at +lam
    if not isinstance(rho.rho_plus, Infinity) and rho.rho_plus < 0:
        kappa = -float(rho.rho_plus)
        states.append(BoundState(kappa, -kappa * kappa, 0j, 1.0 + 0j, Island.RIGHT))
    return states


def bound_states(ext: AlphaVector | RhoPair, geom: JunctionGeometry) -> list[BoundState]:
    """
    Negative-energy eigenstates, most strongly bound first.

    The ansatz is e^{kappa (x + lam)} on the left and c e^{-kappa (x - lam)} on
    the right, so the result does not depend on ``geom``; it is accepted for
    symmetry with the other entry points.
    """
    states = _rho_bound_states(ext) if isinstance(ext, RhoPair) else _alpha_bound_states(ext)
    Logger.log_debug(f"bound_states: {len(states)} state(s) at lam={geom.lam}")
    return sorted(states, key=lambda s: s.energy)
