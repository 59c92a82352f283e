import cmath
import math

import numpy as np
import pytest

from core import scattering
from core.extensions import ClassAlphaError, apply_bc_alpha, normalize_angle
from core.scattering import InvalidWavenumberError, UndefinedPhaseError
from utils.sampling import random_class_alpha, random_rho
from utils.types import INFINITY, AlphaVector, Island, JunctionGeometry, RhoPair, Side

SQRT5 = math.sqrt(5.0)


def delta(strength: float) -> AlphaVector:
    """Point interaction psi' jump = strength * psi at a zero-length junction."""
    return AlphaVector(1 + 0j, 0j, complex(strength), 1 + 0j)


@pytest.mark.parametrize("lam", [0.0, 0.4, 2.0])
@pytest.mark.parametrize("side", [Side.LEFT, Side.RIGHT])
def test_identity_alpha_is_transparent(identity_alpha, lam, side):
    """alpha = (1, 0, 0, 1): r = 0 and t = e^{-2ik lam}."""
    geom = JunctionGeometry(lam)
    for k in (0.1, 1.0, 7.5):
        res = scattering.scatter(identity_alpha, geom, k, side)
        assert abs(res.r) < 1e-14
        assert abs(res.t - cmath.exp(-2j * k * lam)) < 1e-13
        assert res.flux_residual < 1e-14
        assert res.side is side


@pytest.mark.parametrize("lam", [0.0, 1.0])
def test_dirichlet_reflects_totally(lam):
    geom = JunctionGeometry(lam)
    rho = RhoPair(INFINITY, INFINITY)
    for side in Side:
        res = scattering.scatter(rho, geom, 2.0, side)
        assert res.t == 0
        assert abs(res.r + cmath.exp(-4j * lam)) < 1e-14


def test_robin_reflection():
    """Left island: r = e^{-2ik lam} (ik - rho_-)/(ik + rho_-)."""
    geom = JunctionGeometry(0.5)
    k, rho_minus, rho_plus = 1.3, 0.7, -2.0
    rho = RhoPair(rho_plus, rho_minus)
    left = scattering.scatter(rho, geom, k, Side.LEFT)
    right = scattering.scatter(rho, geom, k, Side.RIGHT)
    phase = cmath.exp(-1j * k)
    assert abs(left.r - phase * (1j * k - rho_minus) / (1j * k + rho_minus)) < 1e-14
    assert abs(right.r - phase * (1j * k + rho_plus) / (1j * k - rho_plus)) < 1e-14
    assert abs(abs(left.r) - 1) < 1e-14 and abs(abs(right.r) - 1) < 1e-14


@pytest.mark.parametrize("strength", [-3.0, -0.5, 0.5, 2.0])
def test_delta_transmission(free_geom, strength):
    """|t|^2 = 4k^2 / (4k^2 + g^2) for a point interaction of strength g."""
    for k in (0.2, 1.0, 4.0):
        res = scattering.scatter(delta(strength), free_geom, k)
        assert abs(res.t) ** 2 == pytest.approx(4 * k * k / (4 * k * k + strength**2), rel=1e-12)
        assert res.flux_residual < 1e-13


def test_flux_conserved_for_random_extensions(rng):
    ks = scattering.k_grid(1e-2, 1e2, 64)
    for _ in range(50):
        geom = JunctionGeometry(float(rng.uniform(0, 3)))
        for side in Side:
            results = scattering.scatter_sweep(random_class_alpha(rng), geom, ks, side)
            assert max(r.flux_residual for r in results) < 1e-10
        rho_results = scattering.scatter_sweep(random_rho(rng), geom, ks)
        assert max(r.flux_residual for r in rho_results) < 1e-12


def test_smatrix_is_unitary(rng):
    ks = np.linspace(0.1, 10.0, 20)
    for _ in range(30):
        geom = JunctionGeometry(float(rng.uniform(0, 3)))
        s = scattering.smatrix_sweep(random_class_alpha(rng), geom, ks)
        assert s.shape == (20, 2, 2)
        assert scattering.unitarity_defect(s) < 1e-10


def test_smatrix_layout(identity_alpha):
    geom = JunctionGeometry(0.25)
    s = scattering.smatrix(identity_alpha, geom, 2.0)
    expected = cmath.exp(-1j)
    assert abs(s[0, 0]) < 1e-14 and abs(s[1, 1]) < 1e-14
    assert abs(s[0, 1] - expected) < 1e-14 and abs(s[1, 0] - expected) < 1e-14


def test_sweep_keeps_order_and_length(identity_alpha, free_geom):
    ks = [3.0, 0.5, 1.0]
    results = scattering.scatter_sweep(identity_alpha, free_geom, ks)
    assert [r.k for r in results] == ks


@pytest.mark.parametrize("k", [0.0, -1.0, float("nan"), float("inf")])
def test_rejects_invalid_wavenumber(identity_alpha, free_geom, k):
    with pytest.raises(InvalidWavenumberError):
        scattering.scatter(identity_alpha, free_geom, k)


def test_rejects_non_class_alpha(free_geom):
    with pytest.raises(ClassAlphaError):
        scattering.scatter(AlphaVector(1, 0, 0, 2), free_geom, 1.0)


def test_k_grid():
    ks = scattering.k_grid(1e-2, 1e2, 5)
    assert ks == pytest.approx([1e-2, 1e-1, 1.0, 1e1, 1e2])
    with pytest.raises(ValueError):
        scattering.k_grid(1e-2, 1e2, 1)
    with pytest.raises(InvalidWavenumberError):
        scattering.k_grid(0.0, 1.0, 10)
    with pytest.raises(InvalidWavenumberError):
        scattering.k_grid(2.0, 1.0, 10)


# --- phases -----------------------------------------------------------------


def test_transmission_phase_of_identity(identity_alpha):
    """arg t = -2 k lam reduced to [0, 2 pi)."""
    geom = JunctionGeometry(0.3)
    phase = scattering.transmission_phase(identity_alpha, geom, 2.0)
    assert phase == pytest.approx(normalize_angle(-1.2))


@pytest.mark.parametrize("phi", [0.3, math.pi, 5.0])
def test_phase_covariance(rng, phi):
    """alpha e^{i phi} shifts arg t_L by +phi and arg t_R by -phi; |r|, |t| unchanged."""
    geom = JunctionGeometry(1.1)
    alpha = random_class_alpha(rng)
    shifted = alpha.scaled(phi)
    for k in (0.3, 2.0):
        left = scattering.relative_phase(alpha, shifted, geom, k, Side.LEFT)
        right = scattering.relative_phase(alpha, shifted, geom, k, Side.RIGHT)
        assert cmath.exp(1j * left) == pytest.approx(cmath.exp(1j * phi), abs=1e-10)
        assert cmath.exp(1j * right) == pytest.approx(cmath.exp(-1j * phi), abs=1e-10)
        before, after = scattering.scatter(alpha, geom, k), scattering.scatter(shifted, geom, k)
        assert abs(after.t) == pytest.approx(abs(before.t), rel=1e-12)
        assert abs(after.r) == pytest.approx(abs(before.r), abs=1e-12)


def test_phase_undefined_for_rho(free_geom):
    with pytest.raises(UndefinedPhaseError):
        scattering.transmission_phase(RhoPair(0.0, 1.0), free_geom, 1.0)


def test_phase_undefined_for_vanishing_t(free_geom):
    """A huge delta barrier at small k makes |t| fall below the tolerance."""
    with pytest.raises(UndefinedPhaseError):
        scattering.transmission_phase(delta(1e9), free_geom, 1e-4, tol=1e-12)


# --- bound states -----------------------------------------------------------


def test_attractive_delta_has_one_bound_state(free_geom):
    """g = -2: kappa = 1, E = -1, symmetric amplitudes."""
    states = scattering.bound_states(delta(-2.0), free_geom)
    assert len(states) == 1
    state = states[0]
    assert state.kappa == pytest.approx(1.0)
    assert state.energy == pytest.approx(-1.0)
    assert state.c == pytest.approx(1.0)
    assert state.island is Island.BOTH


def test_repulsive_delta_and_identity_bind_nothing(free_geom, identity_alpha):
    assert scattering.bound_states(delta(2.0), free_geom) == []
    assert scattering.bound_states(identity_alpha, free_geom) == []


def test_two_bound_states_sorted_by_energy(free_geom):
    """a2 = 1, a1 + a4 = -5, a3 = 4: kappa = 4 and kappa = 1."""
    alpha = AlphaVector((-5 + SQRT5) / 2, 1, 4, (-5 - SQRT5) / 2)
    states = scattering.bound_states(alpha, free_geom)
    assert [s.kappa for s in states] == pytest.approx([4.0, 1.0])
    assert [s.energy for s in states] == pytest.approx([-16.0, -1.0])


def test_bound_states_satisfy_boundary_condition(rng):
    found = 0
    for _ in range(200):
        alpha = random_class_alpha(rng)
        for state in scattering.bound_states(alpha, JunctionGeometry(0.5)):
            found += 1
            residual = apply_bc_alpha(alpha, state.boundary_data())
            assert max(abs(r) for r in residual) < 1e-10 * max(1.0, state.kappa)
    assert found > 0


def test_rho_bound_states(free_geom):
    """rho_- > 0 binds on the left with kappa = rho_-, rho_+ < 0 on the right with kappa = -rho_+."""
    states = scattering.bound_states(RhoPair(-1.0, 2.0), free_geom)
    assert [(s.kappa, s.island) for s in states] == [(2.0, Island.LEFT), (1.0, Island.RIGHT)]
    assert scattering.bound_states(RhoPair(1.0, -1.0), free_geom) == []
    assert scattering.bound_states(RhoPair(INFINITY, INFINITY), free_geom) == []


def test_positive_roots_double_root():
    assert scattering._positive_roots(1.0, -2.0, 1.0) == [(1.0, 2)]
    assert scattering._positive_roots(0.0, 2.0, -4.0) == [(2.0, 1)]
    assert scattering._positive_roots(1.0, 0.0, 1.0) == []
