import cmath
import math

import numpy as np

from modules.exception_handler import ExitCode
from modules.logger import Logger
from utils.types import (
    INFINITY,
    AlphaVector,
    BoundaryData,
    C2Matrix,
    Diagonal,
    Infinity,
    IslandProbabilities,
    JunctionGeometry,
    NonDiagonal,
    PhaseForm,
    QuaternionDecomposition,
    RhoPair,
    UnitaryU2,
    ValidationReport,
)

SQRT2 = math.sqrt(2.0)
ETA = cmath.exp(1j * math.pi / 4)
TWO_PI = 2.0 * math.pi

TOL_UNITARY = 1e-10
TOL_DIAGONAL = 1e-12
TOL_DIRICHLET = 1e-10
TOL_CLASS_ALPHA = 1e-9
GAMMA2_WARNING = 1e-6
BRANCH_TOL = 1e-12

EPS = float(np.finfo(float).eps)
# headroom for evaluating the Class alpha products in double precision
ROUNDING_ULPS = 8.0


class ExtensionError(Exception):
    """Base exception for the extension catalog."""

    exit_code = ExitCode.VALIDATION_FAILURE


class NotUnitaryError(ExtensionError):
    """Raised when a matrix is not unitary within tolerance."""

    def __init__(self, residual: float, tol: float):
        super().__init__(
            f"Matrix is not unitary: max |U^dagger U - I| = {residual:.3e} > tol {tol:.1e}"
        )
        self.residual = residual
        self.tol = tol


class NotUnimodularError(ExtensionError):
    """Raised when a diagonal entry does not lie on the unit circle."""


class DiagonalExtensionError(ExtensionError):
    """Raised when a diagonal U is given where a Class alpha form is required."""


class NonDiagonalExtensionError(ExtensionError):
    """Raised when a non-diagonal U is given where a rho form is required."""


class ClassAlphaError(ExtensionError):
    """Raised when a vector violates the Class alpha conditions."""

    def __init__(self, report: ValidationReport):
        super().__init__(
            "Vector is not in Class alpha: "
            f"|a1 a4* - a2 a3* - 1| = {report.determinant_residual:.3e}, "
            f"|Im a1 a3*| = {report.reality_residual_13:.3e}, "
            f"|Im a2 a4*| = {report.reality_residual_24:.3e} (tol {report.tol:.1e})"
        )
        self.report = report


class InvariantViolationError(ExtensionError):
    """Raised when an input that should be impossible in Class alpha shows up."""


def normalize_angle(angle: float) -> float:
    """Maps an angle to [0, 2 pi)."""
    reduced = math.fmod(angle, TWO_PI)
    if reduced < 0:
        reduced += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2 pi
    return 0.0 if reduced >= TWO_PI else reduced


def arg(z: complex) -> float:
    """Argument of z in [0, 2 pi)."""
    return normalize_angle(cmath.phase(z))


def unitarity_residual(matrix: C2Matrix) -> float:
    a = matrix.to_array()
    return float(np.max(np.abs(a.conj().T @ a - np.eye(2))))


def is_unitary(matrix: C2Matrix, tol: float = TOL_UNITARY) -> bool:
    """
    Checks U^dagger U = I entrywise.

    :param matrix: Matrix to test.
    :param tol: Positive tolerance on the max-entry norm of U^dagger U - I.
    :return: True iff the residual is within tol.
    :raises ValueError: If tol is not positive.
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    return unitarity_residual(matrix) <= tol


def as_unitary(matrix: C2Matrix, tol: float = TOL_UNITARY) -> UnitaryU2:
    """
    Returns the unitary view of ``matrix``.

    :raises NotUnitaryError: If U^dagger U deviates from I by more than tol.
    """
    if isinstance(matrix, UnitaryU2):
        return matrix
    residual = unitarity_residual(matrix)
    if residual > tol:
        raise NotUnitaryError(residual, tol)
    return UnitaryU2(matrix.m11, matrix.m12, matrix.m21, matrix.m22)


def decompose_u2(
    u: C2Matrix, tol: float = TOL_UNITARY, branch_tol: float = BRANCH_TOL
) -> QuaternionDecomposition:
    """
    Factorizes U = gamma3 * [[gamma1, -gamma2*], [gamma2, gamma1*]].

    gamma3 is chosen as in the constructive proof of U(2) = U(1) SH:
    e^{i(arg u12 + arg u21 + pi)/2} when u21 != 0, e^{i(arg u11 + arg u22)/2}
    otherwise. Since gamma3^2 = det U in both branches, the branch value is
    then replaced by the square root of det U closest to it, which removes the
    loss of accuracy of the phase sum when |u21| is small. gamma1 and gamma2
    follow as gamma3* u11 and gamma3* u21.

    :param u: A unitary matrix.
    :param tol: Unitarity tolerance.
    :param branch_tol: |u21| at or below which the diagonal branch is used.
    :return: The decomposition.
    :raises NotUnitaryError: If u is not unitary.
    """
    u = as_unitary(u, tol)
    if abs(u.m21) > branch_tol:
        branch = cmath.exp(0.5j * (cmath.phase(u.m12) + cmath.phase(u.m21) + math.pi))
        Logger.log_debug("decompose_u2: off-diagonal branch (u21 != 0)")
    else:
        branch = cmath.exp(0.5j * (cmath.phase(u.m11) + cmath.phase(u.m22)))
        Logger.log_debug("decompose_u2: diagonal branch (u21 = 0)")

    root = cmath.sqrt(u.det())
    root /= abs(root)
    gamma3 = root if abs(root - branch) <= abs(root + branch) else -root

    gamma1 = gamma3.conjugate() * u.m11
    gamma2 = gamma3.conjugate() * u.m21
    return QuaternionDecomposition(gamma1, gamma2, gamma3)


def reconstruct(decomposition: QuaternionDecomposition) -> UnitaryU2:
    return decomposition.reconstruct()


def classify(
    u: C2Matrix, tol: float = TOL_DIAGONAL, unitary_tol: float = TOL_UNITARY
) -> Diagonal | NonDiagonal:
    """
    Splits extensions into the decoupled (diagonal U) and the transmitting
    (non-diagonal U) family.

    :param u: A unitary matrix.
    :param tol: Absolute threshold on |u12| and |u21|.
    :return: ``Diagonal`` with (u11, u22) or ``NonDiagonal`` with the
        decomposition, whose gamma2 is then non-zero.
    :raises NotUnitaryError: If u is not unitary.
    """
    u = as_unitary(u, unitary_tol)
    if abs(u.m12) <= tol and abs(u.m21) <= tol:
        Logger.log_debug("classify: diagonal extension")
        return Diagonal(gamma_l=u.m11, gamma_r=u.m22)
    Logger.log_debug("classify: non-diagonal extension")
    d = decompose_u2(u, unitary_tol, branch_tol=0.0)
    if abs(u.m21) <= BRANCH_TOL and abs(u.m12) > abs(u.m21):
        # u12 = -gamma3 gamma2* carries gamma2 when u21 is at rounding level
        d = QuaternionDecomposition(d.gamma1, -d.gamma3 * u.m12.conjugate(), d.gamma3)
    return NonDiagonal(d)


def _require_unimodular(name: str, gamma: complex, tol: float) -> None:
    if abs(abs(gamma) - 1.0) > tol:
        raise NotUnimodularError(f"|{name}| must be 1, got {abs(gamma):.15g}")


def _rho_component(gamma: complex, sign: float, geom: JunctionGeometry, tol: float):
    if abs(gamma - geom.dirichlet_gamma) <= tol:
        return INFINITY
    theta = arg(gamma)
    return sign * (math.tan(theta / 2.0 - geom.lam / SQRT2) - 1.0) / SQRT2


def u_to_rho(
    gamma_l: complex,
    gamma_r: complex,
    geom: JunctionGeometry,
    tol: float = TOL_DIRICHLET,
    unimodular_tol: float = TOL_UNITARY,
) -> RhoPair:
    """
    Converts a diagonal U = diag(gamma_l, gamma_r) to its BC rho data.

    rho_minus = -(tan(theta_L/2 - lam/sqrt2) - 1)/sqrt2 and
    rho_plus = +(tan(theta_R/2 - lam/sqrt2) - 1)/sqrt2; an entry within
    ``tol`` of -e^{i sqrt2 lam} maps to Dirichlet.

    :raises NotUnimodularError: If an entry is off the unit circle.
    """
    _require_unimodular("gamma_L", gamma_l, unimodular_tol)
    _require_unimodular("gamma_R", gamma_r, unimodular_tol)
    return RhoPair(
        rho_plus=_rho_component(gamma_r, +1.0, geom, tol),
        rho_minus=_rho_component(gamma_l, -1.0, geom, tol),
    )


def _theta_for(rho, sign: float, geom: JunctionGeometry) -> float:
    if isinstance(rho, Infinity):
        return normalize_angle(math.pi + SQRT2 * geom.lam)
    return normalize_angle(2.0 * math.atan(sign * SQRT2 * rho + 1.0) + SQRT2 * geom.lam)


def rho_to_u(rho: RhoPair, geom: JunctionGeometry) -> UnitaryU2:
    """
    Converts BC rho data to the diagonal U = diag(e^{i theta_L}, e^{i theta_R}).
    """
    theta_l = _theta_for(rho.rho_minus, -1.0, geom)
    theta_r = _theta_for(rho.rho_plus, +1.0, geom)
    return UnitaryU2(cmath.exp(1j * theta_l), 0j, 0j, cmath.exp(1j * theta_r))


def u_to_alpha(
    decomposition: QuaternionDecomposition,
    geom: JunctionGeometry,
    warning_threshold: float = GAMMA2_WARNING,
) -> AlphaVector:
    """
    Builds the Class alpha vector of a non-diagonal extension (tunnel-junction
    formula, boundary-matrix form).

    :param decomposition: (gamma1, gamma2, gamma3) with gamma2 != 0.
    :param geom: Junction geometry.
    :param warning_threshold: |gamma2| below which the result is flagged as
        ill-conditioned.
    :return: The vector; ``ill_conditioned`` is set for tiny |gamma2|.
    :raises DiagonalExtensionError: If gamma2 == 0.
    """
    g1, g2, g3 = decomposition.gamma1, decomposition.gamma2, decomposition.gamma3
    if g2 == 0:
        raise DiagonalExtensionError(
            "gamma2 = 0: the extension is diagonal and has no boundary matrix; use u_to_rho"
        )
    ill_conditioned = abs(g2) < warning_threshold
    if ill_conditioned:
        Logger.log_warning(
            f"u_to_alpha: |gamma2| = {abs(g2):.3e} is below {warning_threshold:.1e}; "
            "alpha is dominated by 1/gamma2"
        )

    shift = cmath.exp(-1j * SQRT2 * geom.lam)
    g = shift * g3
    prefactor = 1j * SQRT2 / g2
    return AlphaVector(
        alpha1=prefactor * ((ETA * g1).real + (ETA * g).real),
        alpha2=-prefactor * (g1.real + g.real),
        alpha3=-prefactor * (g1.real + (1j * g).real),
        alpha4=prefactor * ((ETA.conjugate() * g1).real + (ETA * g).real),
        ill_conditioned=ill_conditioned,
    )


def _rounding_allowance(alpha: AlphaVector) -> float:
    """A few ulps of the largest product alpha_j alpha_k*."""
    largest = max(abs(a) for a in alpha.components())
    return ROUNDING_ULPS * EPS * max(1.0, largest * largest)


def validate_class_alpha(alpha: AlphaVector, tol: float = TOL_CLASS_ALPHA) -> ValidationReport:
    """
    Measures how far ``alpha`` is from Class alpha.

    Passes iff each of the three defining residuals is at most ``tol`` plus
    a few ulps of the largest product alpha_j alpha_k*, the rounding of
    evaluating them in double precision.

    :param alpha: Vector to check.
    :param tol: Positive tolerance.
    :return: The report.
    :raises ValueError: If tol is not positive.
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    a = alpha.components()
    determinant = abs(a[0] * a[3].conjugate() - a[1] * a[2].conjugate() - 1.0)
    reality_13 = abs((a[0] * a[2].conjugate()).imag)
    reality_24 = abs((a[1] * a[3].conjugate()).imag)
    pairwise = {
        (j + 1, k + 1): abs((a[j] * a[k].conjugate()).imag)
        for j in range(4)
        for k in range(j + 1, 4)
    }
    limit = tol + _rounding_allowance(alpha)
    passed = max(determinant, reality_13, reality_24) <= limit
    return ValidationReport(
        determinant_residual=determinant,
        reality_residual_13=reality_13,
        reality_residual_24=reality_24,
        pairwise=pairwise,
        tol=tol,
        passed=passed,
    )


def require_class_alpha(alpha: AlphaVector, tol: float = TOL_CLASS_ALPHA) -> ValidationReport:
    report = validate_class_alpha(alpha, tol)
    if not report.passed:
        raise ClassAlphaError(report)
    return report


def extract_phase(alpha: AlphaVector) -> PhaseForm:
    """
    Writes B_alpha = e^{i theta} [[a1, a2], [a3, a4]] with real a's.

    The pivot is alpha1 when non-zero, otherwise alpha2; theta is its
    argument and a_k = alpha_k alpha_pivot* / |alpha_pivot|, which is real in
    Class alpha (the rounding-level imaginary part is dropped).

    :raises InvariantViolationError: If alpha1 = alpha2 = 0.
    """
    components = alpha.components()
    if components[0] != 0:
        pivot = components[0]
    elif components[1] != 0:
        pivot = components[1]
    else:
        raise InvariantViolationError(
            "alpha1 = alpha2 = 0 cannot satisfy alpha1 alpha4* - alpha2 alpha3* = 1"
        )
    modulus = abs(pivot)
    unit = pivot.conjugate() / modulus
    a = [(c * unit).real for c in components]
    return PhaseForm(arg(pivot), *a)


def alpha_to_u(
    alpha: AlphaVector, geom: JunctionGeometry, tol: float = TOL_CLASS_ALPHA
) -> tuple[QuaternionDecomposition, UnitaryU2]:
    """
    Recovers the unitary parameter of a Class alpha extension (tunnel-junction
    formula, unitary form).

    Gamma0 = (|S|^2 + 2)^{-1/2} with S = eta a1 + a2 + a3 + eta* a4; this is
    the normalization for which |gamma1|^2 + |gamma2|^2 = 1.

    :return: The decomposition and the assembled non-diagonal U.
    :raises ClassAlphaError: If alpha is not in Class alpha.
    """
    require_class_alpha(alpha, tol)
    theta = extract_phase(alpha).theta
    a1, a2, a3, a4 = alpha.components()
    phase = cmath.exp(-1j * theta)

    s = ETA * a1 + a2 + a3 + ETA.conjugate() * a4
    gamma0 = (abs(s) ** 2 + 2.0) ** -0.5
    gamma1 = gamma0 * phase * s
    gamma2 = -1j * SQRT2 * gamma0 * phase
    gamma3 = (
        -gamma0
        * cmath.exp(1j * (SQRT2 * geom.lam - theta))
        * (ETA.conjugate() * a1 - 1j * a2 + a3 + ETA.conjugate() * a4)
    )
    decomposition = QuaternionDecomposition(gamma1, gamma2, gamma3)
    return decomposition, decomposition.reconstruct()


def inverse_boundary_matrix(alpha: AlphaVector) -> C2Matrix:
    """B_alpha^{-1} = [[alpha4*, -alpha2*], [-alpha3*, alpha1*]] (Class alpha only)."""
    a1, a2, a3, a4 = alpha.components()
    return C2Matrix(a4.conjugate(), -a2.conjugate(), -a3.conjugate(), a1.conjugate())


def correspondence_residuals(
    alpha: AlphaVector, decomposition: QuaternionDecomposition, geom: JunctionGeometry
) -> tuple[complex, complex, complex, complex]:
    """
    Residuals of the four scalar equations equivalent to D(H_U) = D(H_alpha).
    All vanish when alpha and the decomposition describe the same extension.
    """
    a1, a2, a3, a4 = alpha.components()
    g1, g2, g3 = decomposition.gamma1, decomposition.gamma2, decomposition.gamma3
    e = cmath.exp(1j * SQRT2 * geom.lam) * g3.conjugate()
    eta, eta_c = ETA, ETA.conjugate()
    return (
        (a1 + eta * a2) * g2 - g1.conjugate() - e,
        g2.conjugate() + (a1 + eta * a2) * g1 + (a1 + eta_c * a2) * e,
        eta * g2.conjugate() - (a3 + eta * a4) * g1 - (a3 + eta_c * a4) * e,
        (a3 + eta * a4) * g2 + eta * g1.conjugate() + eta_c * e,
    )


def boundary_condition_for(
    u: C2Matrix, geom: JunctionGeometry, tol: float = TOL_DIAGONAL
) -> AlphaVector | RhoPair:
    """
    The boundary condition of H_U: BC rho for diagonal U, BC alpha otherwise.
    """
    kind = classify(u, tol)
    if isinstance(kind, Diagonal):
        return u_to_rho(kind.gamma_l, kind.gamma_r, geom)
    return u_to_alpha(kind.decomposition, geom)


def unitary_for(extension: AlphaVector | RhoPair, geom: JunctionGeometry) -> UnitaryU2:
    """The unitary parameter of a BC alpha or BC rho extension."""
    if isinstance(extension, RhoPair):
        return rho_to_u(extension, geom)
    return alpha_to_u(extension, geom)[1]


def island_probabilities(u: C2Matrix, tol: float = TOL_UNITARY) -> IslandProbabilities:
    u = as_unitary(u, tol)
    return IslandProbabilities(
        left_stays=abs(u.m11) ** 2,
        left_crosses=abs(u.m12) ** 2,
        right_crosses=abs(u.m21) ** 2,
        right_stays=abs(u.m22) ** 2,
    )


def apply_bc_alpha(alpha: AlphaVector, bd: BoundaryData) -> tuple[complex, complex]:
    """
    Residual (psi(+lam), psi'(+lam)) - B_alpha (psi(-lam), psi'(-lam)).
    """
    a1, a2, a3, a4 = alpha.components()
    return (
        bd.psi_plus - (a1 * bd.psi_minus + a2 * bd.dpsi_minus),
        bd.dpsi_plus - (a3 * bd.psi_minus + a4 * bd.dpsi_minus),
    )


def _robin_residual(rho, psi: complex, dpsi: complex) -> complex:
    if isinstance(rho, Infinity):
        return psi
    return rho * psi - dpsi


def apply_bc_rho(rho: RhoPair, bd: BoundaryData) -> tuple[complex, complex]:
    """
    Residual of BC rho as (left, right): rho_-psi(-lam) - psi'(-lam) (or
    psi(-lam) when Dirichlet), and likewise on the right island.
    """
    return (
        _robin_residual(rho.rho_minus, bd.psi_minus, bd.dpsi_minus),
        _robin_residual(rho.rho_plus, bd.psi_plus, bd.dpsi_plus),
    )


def boundary_form(psi: BoundaryData, phi: BoundaryData) -> complex:
    """
    <H psi|phi> - <psi|H phi> expressed through boundary values:
    psi'(+)* phi(+) - psi(+)* phi'(+) - psi'(-)* phi(-) + psi(-)* phi'(-).
    """
    return (
        psi.dpsi_plus.conjugate() * phi.psi_plus
        - psi.psi_plus.conjugate() * phi.dpsi_plus
        - psi.dpsi_minus.conjugate() * phi.psi_minus
        + psi.psi_minus.conjugate() * phi.dpsi_minus
    )


def boundary_data_for_alpha(
    alpha: AlphaVector, psi_minus: complex, dpsi_minus: complex
) -> BoundaryData:
    """Boundary values of an H_alpha domain function with the given left values."""
    a1, a2, a3, a4 = alpha.components()
    return BoundaryData(
        psi_plus=a1 * psi_minus + a2 * dpsi_minus,
        dpsi_plus=a3 * psi_minus + a4 * dpsi_minus,
        psi_minus=complex(psi_minus),
        dpsi_minus=complex(dpsi_minus),
    )


def _island_values(rho, amplitude: complex) -> tuple[complex, complex]:
    if isinstance(rho, Infinity):
        return 0j, complex(amplitude)
    return complex(amplitude), rho * amplitude


def boundary_data_for_rho(rho: RhoPair, a_plus: complex, a_minus: complex) -> BoundaryData:
    """
    Boundary values of an H_rho domain function: psi = a, psi' = rho a on a
    Robin island, psi = 0, psi' = a on a Dirichlet island.
    """
    psi_plus, dpsi_plus = _island_values(rho.rho_plus, a_plus)
    psi_minus, dpsi_minus = _island_values(rho.rho_minus, a_minus)
    return BoundaryData(psi_plus, dpsi_plus, psi_minus, dpsi_minus)
