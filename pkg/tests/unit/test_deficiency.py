import cmath
import math

import numpy as np
import pytest

from core import deficiency
from core.deficiency import (
    DeficiencyFunction,
    DeficiencyTag,
    OutsideDomainError,
    SingularBoundaryMatrixError,
)
from core.extensions import apply_bc_alpha, apply_bc_rho, rho_to_u, u_to_alpha
from utils.sampling import random_nondiagonal, random_rho
from utils.types import JunctionGeometry, QuaternionDecomposition, RhoPair

SQRT2 = math.sqrt(2.0)
ETA = cmath.exp(1j * math.pi / 4)


@pytest.fixture
def geom():
    return JunctionGeometry(0.8)


@pytest.fixture(params=list(DeficiencyTag))
def function(request, geom):
    return DeficiencyFunction(request.param, geom)


def _inside(f: DeficiencyFunction, offset: float) -> float:
    """A point ``offset`` away from the junction edge on f's island."""
    lam = f.geom.lam
    return -lam - offset if f.tag.is_left else lam + offset


def test_tag_rates_and_signs():
    """f' = rate f with rates eta*, eta, -eta*, -eta."""
    assert DeficiencyTag.L_PLUS.rate == ETA.conjugate()
    assert DeficiencyTag.L_MINUS.rate == ETA
    assert DeficiencyTag.R_PLUS.rate == -ETA.conjugate()
    assert DeficiencyTag.R_MINUS.rate == -ETA
    assert [t.sign for t in DeficiencyTag] == [1, -1, 1, -1]
    assert [t.is_left for t in DeficiencyTag] == [True, True, False, False]


def test_rate_squared_gives_eigenvalue(function):
    """-rate^2 = +/- i, the eigenvalue of the deficiency equation."""
    assert -function.tag.rate**2 == pytest.approx(function.tag.sign * 1j)


def test_normalization_at_zero():
    assert deficiency.normalization(JunctionGeometry(0.0)) == pytest.approx(2**0.25)


def test_edge_values(geom):
    """Every deficiency function starts at R+(+lam) or its conjugate on the junction edge."""
    r = deficiency.boundary_value(geom)
    lam = geom.lam
    values = {
        DeficiencyTag.L_PLUS: (-lam, r),
        DeficiencyTag.L_MINUS: (-lam, r.conjugate()),
        DeficiencyTag.R_PLUS: (lam, r),
        DeficiencyTag.R_MINUS: (lam, r.conjugate()),
    }
    for tag, (x, expected) in values.items():
        value = deficiency.eval_deficiency(DeficiencyFunction(tag, geom), x)
        assert abs(value - expected) < 1e-14
    assert abs(r) ** 2 == pytest.approx(SQRT2)


def test_vanishes_on_other_island(function):
    lam = function.geom.lam
    x = lam + 1.0 if function.tag.is_left else -lam - 1.0
    assert deficiency.eval_deficiency(function, x) == 0
    assert deficiency.eval_deficiency_derivative(function, x) == 0


def test_decays_away_from_junction(function):
    near = abs(deficiency.eval_deficiency(function, _inside(function, 0.1)))
    far = abs(deficiency.eval_deficiency(function, _inside(function, 5.0)))
    assert far < near
    assert far == pytest.approx(near * math.exp(-4.9 / SQRT2))


@pytest.mark.parametrize("x", [0.0, 0.5, -0.79, float("nan")])
def test_rejects_points_inside_junction(geom, x):
    f = DeficiencyFunction(DeficiencyTag.R_PLUS, geom)
    with pytest.raises(OutsideDomainError):
        deficiency.eval_deficiency(f, x)


def test_zero_length_junction_accepts_origin():
    geom = JunctionGeometry(0.0)
    value = deficiency.eval_deficiency(DeficiencyFunction(DeficiencyTag.L_MINUS, geom), 0.0)
    assert value == pytest.approx(2**0.25)


def _domain_function(u, geom, c_l, c_r):
    """psi = c_L L+ + c_R R+ + c_L U L+ + c_R U R+ and its analytic derivative."""
    terms = {
        DeficiencyTag.L_PLUS: c_l,
        DeficiencyTag.R_PLUS: c_r,
        DeficiencyTag.L_MINUS: c_l * u.m11 + c_r * u.m21,
        DeficiencyTag.R_MINUS: c_l * u.m12 + c_r * u.m22,
    }

    def psi(x, evaluate=deficiency.eval_deficiency):
        return sum(c * evaluate(DeficiencyFunction(tag, geom), x) for tag, c in terms.items())

    return psi, lambda x: psi(x, deficiency.eval_deficiency_derivative)


@pytest.mark.parametrize("island", ["left", "right"])
def test_domain_function_derivative_matches_central_difference(rng, geom, island):
    """Central differences of psi converge to the analytic psi' at O(h^2)."""
    u = random_nondiagonal(rng).reconstruct()
    # one island at a time keeps psi''' away from zero (|u11|, |u22| < 1)
    c_l, c_r = (1.0 + 0j, 0j) if island == "left" else (0j, 1.0 + 0j)
    psi, dpsi = _domain_function(u, geom, c_l, c_r)
    x = -geom.lam - 0.7 if island == "left" else geom.lam + 0.9

    def error(h):
        return abs((psi(x + h) - psi(x - h)) / (2 * h) - dpsi(x))

    coarse, fine = error(1e-2), error(5e-3)
    assert coarse < 1e-4
    assert coarse / fine == pytest.approx(4.0, rel=0.02)


def test_domain_function_matches_domain_sample(rng, geom):
    """The interior function and domain_sample agree at the junction edges."""
    u = random_nondiagonal(rng).reconstruct()
    c_l, c_r = 0.4 - 0.2j, -1.3 + 0.6j
    psi, dpsi = _domain_function(u, geom, c_l, c_r)
    bd = deficiency.domain_sample(u, geom, c_l, c_r)
    assert psi(geom.lam) == pytest.approx(bd.psi_plus, abs=1e-14)
    assert dpsi(geom.lam) == pytest.approx(bd.dpsi_plus, abs=1e-14)
    assert psi(-geom.lam) == pytest.approx(bd.psi_minus, abs=1e-14)
    assert dpsi(-geom.lam) == pytest.approx(bd.dpsi_minus, abs=1e-14)


@pytest.mark.parametrize("lam", [0.0, 0.5, 2.0, 3.0])
def test_unit_norm(lam):
    """Closed form and quadrature both give norm 1."""
    for tag in DeficiencyTag:
        f = DeficiencyFunction(tag, JunctionGeometry(lam))
        assert deficiency.deficiency_norm(f) == pytest.approx(1.0, abs=1e-14)
        assert deficiency.deficiency_norm_quadrature(f) == pytest.approx(1.0, abs=1e-8)


def test_eigen_relation_residual_is_second_order(function):
    """Halving the step divides the finite-difference residual by about 4."""
    x = _inside(function, 1.0)
    coarse = deficiency.eigen_relation_residual(function, x, h=1e-2)
    fine = deficiency.eigen_relation_residual(function, x, h=5e-3)
    assert coarse < 1e-4
    assert coarse / fine == pytest.approx(4.0, rel=0.05)


def test_eigen_relation_default_step(function):
    assert deficiency.eigen_relation_residual(function, _inside(function, 0.5)) < 1e-6


def test_eigen_relation_rejects_bad_stencil(function):
    with pytest.raises(OutsideDomainError):
        deficiency.eigen_relation_residual(function, _inside(function, 1e-3), h=1e-2)
    with pytest.raises(ValueError):
        deficiency.eigen_relation_residual(function, _inside(function, 1.0), h=0.0)


def test_det_a_minus_matches_numeric(rng):
    for _ in range(50):
        d = random_nondiagonal(rng)
        geom = JunctionGeometry(float(rng.uniform(0, 3)))
        numeric = np.linalg.det(deficiency.boundary_matrices(d, geom).a_minus.to_array())
        assert abs(deficiency.det_a_minus(d, geom) - numeric) < 1e-12


def test_oracle_matches_u_to_alpha(rng):
    """A+ A-^{-1} built from the basis equals the closed-form boundary matrix."""
    for _ in range(200):
        d = random_nondiagonal(rng)
        geom = JunctionGeometry(float(rng.uniform(0, 3)))
        alpha = u_to_alpha(d, geom)
        oracle = deficiency.oracle_boundary_matrix(d, geom)
        scale = max(1.0, max(abs(a) for a in alpha.components()))
        assert oracle.max_distance(alpha.boundary_matrix()) / scale < 1e-9


def test_oracle_rejects_diagonal(geom):
    with pytest.raises(SingularBoundaryMatrixError):
        deficiency.oracle_boundary_matrix(QuaternionDecomposition(1 + 0j, 0j, 1 + 0j), geom)


def test_domain_sample_satisfies_bc_alpha(rng):
    for _ in range(100):
        d = random_nondiagonal(rng)
        geom = JunctionGeometry(float(rng.uniform(0, 3)))
        alpha = u_to_alpha(d, geom)
        bd = deficiency.domain_sample(d.reconstruct(), geom, complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))
        scale = max(1.0, max(abs(a) for a in alpha.components()))
        assert max(abs(r) for r in apply_bc_alpha(alpha, bd)) / scale < 1e-9


def test_domain_sample_satisfies_bc_rho(rng):
    for _ in range(100):
        rho = random_rho(rng)
        geom = JunctionGeometry(float(rng.uniform(0, 3)))
        bd = deficiency.domain_sample(rho_to_u(rho, geom), geom, 0.3 - 1.1j, 2.0 + 0.5j)
        assert max(abs(r) for r in apply_bc_rho(rho, bd)) < 1e-9


def test_domain_sample_neumann_at_zero_length():
    """rho = (0, 0) at lam = 0: the sample has zero slope on both sides."""
    geom = JunctionGeometry(0.0)
    bd = deficiency.domain_sample(rho_to_u(RhoPair(0.0, 0.0), geom), geom, 1 + 0j, 1j)
    assert abs(bd.dpsi_plus) < 1e-14
    assert abs(bd.dpsi_minus) < 1e-14
    assert abs(bd.psi_plus) > 0.1 and abs(bd.psi_minus) > 0.1
