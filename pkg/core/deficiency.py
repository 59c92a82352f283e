import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

from modules.exception_handler import ExitCode
from modules.logger import Logger
from utils.types import (
    BoundaryData,
    BoundaryMatrixPair,
    C2Matrix,
    JunctionGeometry,
    QuaternionDecomposition,
    UnitaryU2,
)

SQRT2 = math.sqrt(2.0)
ETA = cmath.exp(1j * math.pi / 4)

DEFAULT_STEP = 1e-4
QUAD_TOL = 1e-13


class DeficiencyError(Exception):
    """Base exception for the deficiency-subspace machinery."""

    exit_code = ExitCode.VALIDATION_FAILURE


class OutsideDomainError(DeficiencyError):
    """Raised when a point lies inside the excised segment (-lam, +lam)."""


class SingularBoundaryMatrixError(DeficiencyError):
    """Raised when A- cannot be inverted (diagonal U)."""


class DeficiencyTag(Enum):
    """
    The four deficiency functions. L lives on the left island, R on the
    right one; the sign is that of the eigenvalue of H0*.
    """

    L_PLUS = "Lplus"
    L_MINUS = "Lminus"
    R_PLUS = "Rplus"
    R_MINUS = "Rminus"

    @property
    def is_left(self) -> bool:
        return self in (DeficiencyTag.L_PLUS, DeficiencyTag.L_MINUS)

    @property
    def sign(self) -> int:
        return 1 if self in (DeficiencyTag.L_PLUS, DeficiencyTag.R_PLUS) else -1

    @property
    def rate(self) -> complex:
        """The constant k with f' = k f."""
        return _RATES[self]


# L+' = eta* L+, L-' = eta L-, R+' = -eta* R+, R-' = -eta R-
_RATES = {
    DeficiencyTag.L_PLUS: ETA.conjugate(),
    DeficiencyTag.L_MINUS: ETA,
    DeficiencyTag.R_PLUS: -ETA.conjugate(),
    DeficiencyTag.R_MINUS: -ETA,
}


@dataclass(frozen=True)
class DeficiencyFunction:
    tag: DeficiencyTag
    geom: JunctionGeometry

    @property
    def support(self) -> tuple[float, float]:
        lam = self.geom.lam
        return (-math.inf, -lam) if self.tag.is_left else (lam, math.inf)

    def on_support(self, x: float) -> bool:
        lo, hi = self.support
        return lo <= x <= hi


def normalization(geom: JunctionGeometry) -> float:
    """N = 2^{1/4} e^{lam/sqrt2}."""
    return 2.0**0.25 * math.exp(geom.lam / SQRT2)


def boundary_value(geom: JunctionGeometry) -> complex:
    """R+(+lam) = N e^{(-1+i) lam/sqrt2}; every boundary value is this or its conjugate."""
    return normalization(geom) * cmath.exp((-1.0 + 1j) * geom.lam / SQRT2)


def _check_point(x: float, geom: JunctionGeometry) -> None:
    if math.isnan(x):
        raise OutsideDomainError("x is NaN")
    if abs(x) < geom.lam:
        raise OutsideDomainError(
            f"x = {x} lies inside the junction (-{geom.lam}, {geom.lam})"
        )


def eval_deficiency(f: DeficiencyFunction, x: float) -> complex:
    """
    Value of a deficiency function at a point of the two islands.

    At x = -lam (L) or x = +lam (R) the one-sided limit is returned. On the
    opposite island the function vanishes.

    :raises OutsideDomainError: If |x| < lam.
    """
    _check_point(x, f.geom)
    if not f.on_support(x):
        return 0j
    return normalization(f.geom) * cmath.exp(f.tag.rate * x)


def eval_deficiency_derivative(f: DeficiencyFunction, x: float) -> complex:
    return f.tag.rate * eval_deficiency(f, x)


def deficiency_norm(f: DeficiencyFunction) -> float:
    """Closed-form L2 norm: N^2 e^{-sqrt2 lam} / sqrt2 under the root."""
    n = normalization(f.geom)
    return math.sqrt(n * n * math.exp(-SQRT2 * f.geom.lam) / SQRT2)


def deficiency_norm_quadrature(f: DeficiencyFunction) -> float:
    """The same norm by adaptive quadrature over the supporting island."""
    lo, hi = f.support
    value, abserr = integrate.quad(
        lambda x: abs(eval_deficiency(f, x)) ** 2, lo, hi, epsabs=QUAD_TOL, epsrel=QUAD_TOL
    )
    Logger.log_debug(f"deficiency_norm_quadrature: {f.tag.value} abserr={abserr:.2e}")
    return math.sqrt(value)


def eigen_relation_residual(f: DeficiencyFunction, x: float, h: float = DEFAULT_STEP) -> float:
    """
    |-f''(x) - (+/- i) f(x)| with f'' from central second differences.

    The residual is O(h^2); x - h and x + h must both lie on the supporting
    island.

    :raises OutsideDomainError: If the stencil leaves the island.
    :raises ValueError: If h is not positive.
    """
    if h <= 0:
        raise ValueError(f"Step must be positive, got {h}")
    if not (f.on_support(x - h) and f.on_support(x + h)):
        raise OutsideDomainError(
            f"Stencil [{x - h}, {x + h}] leaves the support of {f.tag.value}"
        )
    second = (
        eval_deficiency(f, x + h) - 2.0 * eval_deficiency(f, x) + eval_deficiency(f, x - h)
    ) / (h * h)
    return abs(-second - f.tag.sign * 1j * eval_deficiency(f, x))


def boundary_matrices(d: QuaternionDecomposition, geom: JunctionGeometry) -> BoundaryMatrixPair:
    """
    A+ and A- with (psi(+lam), psi'(+lam)) = A+ (c_L, c_R) and
    (psi(-lam), psi'(-lam)) = A- (c_L, c_R) for
    psi = c_L (L+ + U L+) + c_R (R+ + U R+).
    """
    g1, g2, g3 = d.gamma1, d.gamma2, d.gamma3
    r = boundary_value(geom)
    rc = r.conjugate()
    eta, eta_c = ETA, ETA.conjugate()

    a_plus = C2Matrix(
        -g3 * g2.conjugate() * rc,
        r + g3 * g1.conjugate() * rc,
        eta * g3 * g2.conjugate() * rc,
        -(eta_c * r + eta * g3 * g1.conjugate() * rc),
    )
    a_minus = C2Matrix(
        r + g3 * g1 * rc,
        g3 * g2 * rc,
        eta_c * r + eta * g3 * g1 * rc,
        eta * g3 * g2 * rc,
    )
    return BoundaryMatrixPair(a_plus=a_plus, a_minus=a_minus)


def det_a_minus(d: QuaternionDecomposition, geom: JunctionGeometry) -> complex:
    """i sqrt2 |R+(+lam)|^2 gamma3 gamma2."""
    return 1j * SQRT2 * abs(boundary_value(geom)) ** 2 * d.gamma3 * d.gamma2


def oracle_boundary_matrix(d: QuaternionDecomposition, geom: JunctionGeometry) -> C2Matrix:
    """
    B = A+ A-^{-1}, built from the deficiency basis alone.

    :raises SingularBoundaryMatrixError: If gamma2 = 0 or A- is numerically singular.
    """
    if d.gamma2 == 0:
        raise SingularBoundaryMatrixError(
            "gamma2 = 0: A- is singular for a diagonal extension"
        )
    pair = boundary_matrices(d, geom)
    a_plus, a_minus = pair.a_plus.to_array(), pair.a_minus.to_array()
    try:
        # B A- = A+  <=>  A-^T B^T = A+^T
        b = np.linalg.solve(a_minus.T, a_plus.T).T
    except np.linalg.LinAlgError as e:
        raise SingularBoundaryMatrixError(f"A- is singular: {e}") from e
    if not np.all(np.isfinite(b)):
        raise SingularBoundaryMatrixError("A- is numerically singular")
    return C2Matrix.from_array(b)


def domain_sample(u: UnitaryU2, geom: JunctionGeometry, c_l: complex, c_r: complex) -> BoundaryData:
    """
    Boundary values of psi = c_L L+ + c_R R+ + c_L U L+ + c_R U R+, where
    U L+ = u11 L- + u12 R- and U R+ = u21 L- + u22 R-.

    Evaluated straight from the basis functions; no boundary matrix is used.
    """
    lam = geom.lam
    l_plus = DeficiencyFunction(DeficiencyTag.L_PLUS, geom)
    l_minus = DeficiencyFunction(DeficiencyTag.L_MINUS, geom)
    r_plus = DeficiencyFunction(DeficiencyTag.R_PLUS, geom)
    r_minus = DeficiencyFunction(DeficiencyTag.R_MINUS, geom)

    left_coeff = c_l * u.m11 + c_r * u.m21
    right_coeff = c_l * u.m12 + c_r * u.m22

    # at lam = 0 both islands touch x = 0, so each side uses its own functions only
    def right(evaluate) -> complex:
        return c_r * evaluate(r_plus, lam) + right_coeff * evaluate(r_minus, lam)

    def left(evaluate) -> complex:
        return c_l * evaluate(l_plus, -lam) + left_coeff * evaluate(l_minus, -lam)

    return BoundaryData(
        psi_plus=right(eval_deficiency),
        dpsi_plus=right(eval_deficiency_derivative),
        psi_minus=left(eval_deficiency),
        dpsi_minus=left(eval_deficiency_derivative),
    )
