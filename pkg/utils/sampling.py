import cmath
import math

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence

from utils.types import (
    INFINITY,
    AlphaVector,
    QuaternionDecomposition,
    RhoPair,
    UnitaryU2,
)

MIN_GAMMA2 = 0.01
RHO_RANGE = 3.0


def make_rng(seed: int) -> Generator:
    """A PCG64 generator; the only source of randomness in the package."""
    return Generator(PCG64(seed))


def spawn_generators(seed: int, count: int) -> list[Generator]:
    """
    Independent generators derived from one seed, so that adding draws to one
    consumer never shifts the stream of another.
    """
    return [Generator(PCG64(child)) for child in SeedSequence(seed).spawn(count)]


def _angle(rng: Generator) -> float:
    return float(rng.uniform(0.0, 2.0 * math.pi))


def random_decomposition(rng: Generator) -> QuaternionDecomposition:
    """
    Haar-distributed (gamma1, gamma2, gamma3): sin^2 chi uniform on [0, 1],
    all phases uniform.
    """
    weight = float(rng.uniform(0.0, 1.0))
    cos_chi, sin_chi = math.sqrt(1.0 - weight), math.sqrt(weight)
    return QuaternionDecomposition(
        gamma1=cos_chi * cmath.exp(1j * _angle(rng)),
        gamma2=sin_chi * cmath.exp(1j * _angle(rng)),
        gamma3=cmath.exp(1j * _angle(rng)),
    )


def random_unitary(rng: Generator) -> UnitaryU2:
    return random_decomposition(rng).reconstruct()


def random_nondiagonal(rng: Generator, min_gamma2: float = MIN_GAMMA2) -> QuaternionDecomposition:
    """A Haar sample conditioned on |gamma2| > min_gamma2 (rejection)."""
    while True:
        d = random_decomposition(rng)
        if abs(d.gamma2) > min_gamma2:
            return d


def random_lambda(rng: Generator, lambda_max: float) -> float:
    return float(rng.uniform(0.0, lambda_max))


def random_complex(rng: Generator, scale: float = 1.0) -> complex:
    re, im = rng.normal(0.0, scale, size=2)
    return complex(re, im)


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def random_class_alpha(rng: Generator) -> AlphaVector:
    """
    e^{i theta} R(phi1) diag(e^s, e^{-s}) R(phi2) with s uniform on [-1, 1];
    entries stay of order one, which keeps wavenumber sweeps well conditioned.
    """
    theta, phi1, phi2 = _angle(rng), _angle(rng), _angle(rng)
    s = float(rng.uniform(-1.0, 1.0))
    real = _rotation(phi1) @ np.diag([math.exp(s), math.exp(-s)]) @ _rotation(phi2)
    b = cmath.exp(1j * theta) * real
    return AlphaVector(complex(b[0, 0]), complex(b[0, 1]), complex(b[1, 0]), complex(b[1, 1]))


def random_rho(rng: Generator, dirichlet_probability: float = 0.2) -> RhoPair:
    """Each component is the Dirichlet marker with the given probability, else uniform on [-3, 3]."""

    def component():
        if rng.uniform() < dirichlet_probability:
            return INFINITY
        return float(rng.uniform(-RHO_RANGE, RHO_RANGE))

    rho_plus = component()
    return RhoPair(rho_plus=rho_plus, rho_minus=component())
