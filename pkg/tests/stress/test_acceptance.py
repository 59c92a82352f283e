import pytest

from core import scattering
from core.verification import run_verification
from utils.sampling import make_rng, random_class_alpha, random_rho
from utils.types import JunctionGeometry, Side


@pytest.mark.stress
def test_full_verification_passes():
    """1000 samples per suite on the default 256-point grid."""
    report = run_verification(seed=0, samples=1000, lambda_max=3.0)
    failures = {s.name: s.max_residual for s in report.suites if not s.passed}
    assert report.passed, f"failing suites: {failures}"


@pytest.mark.stress
@pytest.mark.parametrize("seed", [1, 2024])
def test_full_verification_other_seeds(seed):
    assert run_verification(seed=seed, samples=1000).passed


@pytest.mark.stress
def test_flux_over_wide_sweep():
    """Flux stays conserved to 1e-12 over 1000 random extensions."""
    rng = make_rng(99)
    ks = scattering.k_grid(1e-2, 1e2, 256)
    worst = 0.0
    for i in range(1000):
        geom = JunctionGeometry(float(rng.uniform(0.0, 3.0)))
        ext = random_class_alpha(rng) if i % 2 == 0 else random_rho(rng)
        for side in Side:
            worst = max(worst, max(r.flux_residual for r in scattering.scatter_sweep(ext, geom, ks, side)))
    assert worst < 1e-12
