import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Infinity(Enum):
    """
    The positive-infinity marker of the extended reals.

    Kept apart from IEEE ``inf`` so that it never enters arithmetic; code that
    accepts an ``ExtendedReal`` branches on it explicitly.
    """

    INF = "inf"

    def __str__(self) -> str:
        return self.value


INFINITY = Infinity.INF

ExtendedReal = float | Infinity


class Side(Enum):
    """Incidence side of a plane wave."""

    LEFT = "left"
    RIGHT = "right"


class Island(Enum):
    """Half-line(s) carrying a bound state."""

    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


@dataclass(frozen=True)
class C2Matrix:
    """
    A general 2x2 complex matrix, stored entrywise.
    """

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @classmethod
    def from_array(cls, array) -> "C2Matrix":
        """
        Builds a matrix from any 2x2 array-like.

        :param array: Nested sequence or numpy array of shape (2, 2).
        :return: The matrix.
        :raises ValueError: If the shape is not (2, 2).
        """
        a = np.asarray(array, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError(f"Expected a 2x2 matrix, got shape {a.shape}")
        return cls(complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]))

    @classmethod
    def diag(cls, d1: complex, d2: complex) -> "C2Matrix":
        return cls(complex(d1), 0j, 0j, complex(d2))

    @classmethod
    def identity(cls) -> "C2Matrix":
        return cls.diag(1, 1)

    def to_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def max_distance(self, other: "C2Matrix") -> float:
        """Largest entrywise modulus of ``self - other``."""
        return float(np.max(np.abs(self.to_array() - other.to_array())))


@dataclass(frozen=True)
class UnitaryU2(C2Matrix):
    """
    A 2x2 matrix known to be unitary; the parameter of one self-adjoint
    extension. Use ``core.extensions.as_unitary`` to obtain one from raw input.
    """


@dataclass(frozen=True)
class QuaternionDecomposition:
    """
    The factorization U = gamma3 * [[gamma1, -gamma2*], [gamma2, gamma1*]]
    with |gamma1|^2 + |gamma2|^2 = 1 and |gamma3| = 1.

    The triple is fixed only up to a common sign; compare reconstructions,
    never triples.
    """

    gamma1: complex
    gamma2: complex
    gamma3: complex

    def reconstruct(self) -> UnitaryU2:
        g1, g2, g3 = self.gamma1, self.gamma2, self.gamma3
        return UnitaryU2(
            g3 * g1,
            -g3 * g2.conjugate(),
            g3 * g2,
            g3 * g1.conjugate(),
        )

    def norm_residual(self) -> float:
        """| |gamma1|^2 + |gamma2|^2 - 1 | """
        return abs(abs(self.gamma1) ** 2 + abs(self.gamma2) ** 2 - 1.0)


@dataclass(frozen=True)
class AlphaVector:
    """
    The vector (alpha1, alpha2, alpha3, alpha4) of a transfer-type boundary
    condition. alpha1 and alpha4 are dimensionless, alpha2 carries length and
    alpha3 inverse length (hbar = 2m = 1).

    ``ill_conditioned`` is set by ``u_to_alpha`` when |gamma2| is so small
    that the entries are dominated by the 1/gamma2 factor. It does not take
    part in equality.
    """

    alpha1: complex
    alpha2: complex
    alpha3: complex
    alpha4: complex
    ill_conditioned: bool = field(default=False, compare=False)

    @classmethod
    def from_matrix(cls, matrix: C2Matrix) -> "AlphaVector":
        return cls(matrix.m11, matrix.m12, matrix.m21, matrix.m22)

    def components(self) -> tuple[complex, complex, complex, complex]:
        return (self.alpha1, self.alpha2, self.alpha3, self.alpha4)

    def boundary_matrix(self) -> C2Matrix:
        """B_alpha = [[alpha1, alpha2], [alpha3, alpha4]]."""
        return C2Matrix(self.alpha1, self.alpha2, self.alpha3, self.alpha4)

    def scaled(self, phi: float) -> "AlphaVector":
        """Multiplies every component by e^{i phi}; stays in Class alpha."""
        phase = cmath.exp(1j * phi)
        return AlphaVector(*(phase * a for a in self.components()))

    def max_distance(self, other: "AlphaVector") -> float:
        return max(abs(a - b) for a, b in zip(self.components(), other.components()))


@dataclass(frozen=True)
class PhaseForm:
    """
    B_alpha written as e^{i theta} [[a1, a2], [a3, a4]] with real a's and
    a1 a4 - a2 a3 = 1.
    """

    theta: float
    a1: float
    a2: float
    a3: float
    a4: float

    def real_matrix(self) -> np.ndarray:
        return np.array([[self.a1, self.a2], [self.a3, self.a4]], dtype=float)

    def matrix(self) -> C2Matrix:
        return C2Matrix.from_array(cmath.exp(1j * self.theta) * self.real_matrix())

    def determinant(self) -> float:
        return self.a1 * self.a4 - self.a2 * self.a3


@dataclass(frozen=True)
class RhoPair:
    """
    Decoupled Robin/Dirichlet data (rho_plus, rho_minus) for the right and
    left island. A component equal to ``INFINITY`` means Dirichlet.
    """

    rho_plus: ExtendedReal
    rho_minus: ExtendedReal

    def __post_init__(self):
        for name in ("rho_plus", "rho_minus"):
            value = getattr(self, name)
            if isinstance(value, Infinity):
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{name} must be a real number or INFINITY, got {value!r}")
            if not math.isfinite(value):
                raise ValueError(
                    f"{name} must be finite or the INFINITY marker, got {value!r}"
                )


@dataclass(frozen=True)
class JunctionGeometry:
    """
    The excised segment [-lam, +lam]; ``lam`` is its half-length.
    """

    lam: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.lam) or self.lam < 0:
            raise ValueError(f"Junction half-length must be finite and >= 0, got {self.lam}")

    @property
    def dirichlet_gamma(self) -> complex:
        """-e^{i sqrt2 lam}: the diagonal entry that corresponds to rho = infinity."""
        return -cmath.exp(1j * math.sqrt(2.0) * self.lam)


@dataclass(frozen=True)
class BoundaryData:
    """
    Boundary values psi(+lam), psi'(+lam), psi(-lam), psi'(-lam) of a wave
    function on the two islands.
    """

    psi_plus: complex
    dpsi_plus: complex
    psi_minus: complex
    dpsi_minus: complex

    def __post_init__(self):
        for value in (self.psi_plus, self.dpsi_plus, self.psi_minus, self.dpsi_minus):
            if not cmath.isfinite(value):
                raise ValueError(f"Boundary values must be finite, got {value!r}")

    @property
    def plus(self) -> np.ndarray:
        return np.array([self.psi_plus, self.dpsi_plus], dtype=complex)

    @property
    def minus(self) -> np.ndarray:
        return np.array([self.psi_minus, self.dpsi_minus], dtype=complex)


@dataclass(frozen=True)
class Diagonal:
    """Classification result for a diagonal U = diag(gamma_l, gamma_r)."""

    gamma_l: complex
    gamma_r: complex


@dataclass(frozen=True)
class NonDiagonal:
    """Classification result for a non-diagonal U; gamma2 != 0."""

    decomposition: QuaternionDecomposition


@dataclass(frozen=True)
class ValidationReport:
    """
    Residuals of the Class alpha conditions.

    ``pairwise`` maps (j, k), j < k, to |Im(alpha_j alpha_k*)|. Only the first
    three residuals decide ``passed``; the pairwise ones are diagnostics.
    """

    determinant_residual: float
    reality_residual_13: float
    reality_residual_24: float
    pairwise: dict[tuple[int, int], float]
    tol: float
    passed: bool

    @property
    def max_pairwise(self) -> float:
        return max(self.pairwise.values(), default=0.0)


@dataclass(frozen=True)
class IslandProbabilities:
    """
    |u_jk|^2: probabilities that U sends a left (right) deficiency function
    back to its own island or across the junction.
    """

    left_stays: float
    left_crosses: float
    right_crosses: float
    right_stays: float


@dataclass(frozen=True)
class BoundaryMatrixPair:
    """A+ and A-: (psi, psi') at +lam and -lam as linear maps of (c_L, c_R)."""

    a_plus: C2Matrix
    a_minus: C2Matrix


@dataclass(frozen=True)
class ScatteringResult:
    k: float
    side: Side
    r: complex
    t: complex
    flux_residual: float


@dataclass(frozen=True)
class BoundState:
    """
    A square-integrable solution with energy -kappa^2.

    The left-island part is ``left_amplitude * e^{kappa (x + lam)}`` and the
    right-island part ``right_amplitude * e^{-kappa (x - lam)}``.
    """

    kappa: float
    energy: float
    left_amplitude: complex
    right_amplitude: complex
    island: Island
    multiplicity: int = 1

    @property
    def c(self) -> complex:
        """Right-island amplitude relative to the left one."""
        if self.left_amplitude == 0:
            return self.right_amplitude
        return self.right_amplitude / self.left_amplitude

    def boundary_data(self) -> BoundaryData:
        return BoundaryData(
            psi_plus=self.right_amplitude,
            dpsi_plus=-self.kappa * self.right_amplitude,
            psi_minus=self.left_amplitude,
            dpsi_minus=self.kappa * self.left_amplitude,
        )
