import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.random import Generator

from core import deficiency, extensions, scattering
from core.deficiency import DeficiencyFunction, DeficiencyTag
from core.extensions import SQRT2, TWO_PI
from modules.logger import Logger
from utils import sampling
from utils.types import (
    INFINITY,
    AlphaVector,
    C2Matrix,
    Infinity,
    JunctionGeometry,
    RhoPair,
    Side,
)

DEFAULT_TOLERANCES = {
    "decomposition": 1e-12,
    "class_alpha": 1e-12,
    "lemma1": 1e-12,
    "roundtrip_a": 1e-10,
    "roundtrip_b": 1e-10,
    "rho_roundtrip": 1e-10,
    "rho_infinite": 1e-12,
    "oracle": 1e-9,
    "domain": 1e-9,
    "boundary_form": 1e-9,
    "phase_form": 1e-12,
    "flux": 1e-12,
    "smatrix": 1e-12,
    "phase_covariance": 1e-10,
    "delta_oracle": 1e-10,
    "deficiency_norm": 1e-10,
    "rel2": 1e-12,
    "eigen_relation": 1e-6,
}

SWEEP_EXTENSIONS = 100
RHO_INFINITE_SAMPLES = 20
DEFICIENCY_NORM_SAMPLES = 20
DELTA_STRENGTHS = (0.5, 1.0, 2.0)
EIGEN_STEP = 1e-4


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_residual: float
    tolerance: float
    samples: int
    passed: bool
    error: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    samples: int
    lambda_max: float
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    @property
    def failing(self) -> list[str]:
        return [s.name for s in self.suites if not s.passed]


@dataclass(frozen=True)
class SuiteContext:
    samples: int
    lambda_max: float
    min_gamma2: float
    ks: np.ndarray


def _relative(distance: float, scale: float) -> float:
    return distance / max(1.0, scale)


def _geometry(rng: Generator, ctx: SuiteContext) -> JunctionGeometry:
    return JunctionGeometry(sampling.random_lambda(rng, ctx.lambda_max))


def _random_alpha_case(rng: Generator, ctx: SuiteContext):
    d = sampling.random_nondiagonal(rng, ctx.min_gamma2)
    geom = _geometry(rng, ctx)
    return d, geom, extensions.u_to_alpha(d, geom)


def _angle_distance(a: float, b: float) -> float:
    d = math.fmod(abs(a - b), TWO_PI)
    return min(d, TWO_PI - d)


def _suite_decomposition(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        u = sampling.random_unitary(rng)
        worst = max(worst, extensions.decompose_u2(u).reconstruct().max_distance(u))
    return worst, ctx.samples


def _suite_class_alpha(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        _, _, alpha = _random_alpha_case(rng, ctx)
        report = extensions.validate_class_alpha(alpha)
        worst = max(
            worst, report.determinant_residual, report.reality_residual_13, report.reality_residual_24
        )
    return worst, ctx.samples


def _suite_lemma1(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        _, _, alpha = _random_alpha_case(rng, ctx)
        worst = max(worst, extensions.validate_class_alpha(alpha).max_pairwise)
    return worst, ctx.samples


def _suite_roundtrip_a(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        _, geom, alpha = _random_alpha_case(rng, ctx)
        d, _ = extensions.alpha_to_u(alpha, geom)
        again = extensions.u_to_alpha(d, geom)
        worst = max(worst, again.max_distance(alpha))
    return worst, ctx.samples


def _suite_roundtrip_b(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        d, geom, alpha = _random_alpha_case(rng, ctx)
        _, u = extensions.alpha_to_u(alpha, geom)
        worst = max(worst, u.max_distance(d.reconstruct()))
    return worst, ctx.samples


def _suite_rho_roundtrip(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        geom = _geometry(rng, ctx)
        rho = sampling.random_rho(rng, dirichlet_probability=0.0)
        u = extensions.rho_to_u(rho, geom)
        back = extensions.u_to_rho(u.m11, u.m22, geom)
        for before, after in ((rho.rho_plus, back.rho_plus), (rho.rho_minus, back.rho_minus)):
            if isinstance(after, Infinity):
                return math.inf, ctx.samples
            worst = max(worst, _relative(abs(after - before), abs(before)))

        theta_l, theta_r = rng.uniform(0.0, TWO_PI, size=2)
        diagonal = C2Matrix.diag(cmath.exp(1j * theta_l), cmath.exp(1j * theta_r))
        rho_back = extensions.u_to_rho(diagonal.m11, diagonal.m22, geom)
        worst = max(worst, extensions.rho_to_u(rho_back, geom).max_distance(diagonal))
    return worst, ctx.samples


def _suite_rho_infinite(rng, ctx):
    worst = 0.0
    for _ in range(RHO_INFINITE_SAMPLES):
        geom = _geometry(rng, ctx)
        u = extensions.rho_to_u(RhoPair(INFINITY, INFINITY), geom)
        target = geom.dirichlet_gamma
        worst = max(worst, abs(u.m11 - target), abs(u.m22 - target))
        back = extensions.u_to_rho(target, target, geom)
        if back != RhoPair(INFINITY, INFINITY):
            return math.inf, RHO_INFINITE_SAMPLES
    return worst, RHO_INFINITE_SAMPLES


def _suite_oracle(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        d, geom, alpha = _random_alpha_case(rng, ctx)
        b = alpha.boundary_matrix()
        oracle = deficiency.oracle_boundary_matrix(d, geom)
        worst = max(worst, oracle.max_distance(b))
    return worst, ctx.samples


def _suite_domain(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        d, geom, alpha = _random_alpha_case(rng, ctx)
        bd = deficiency.domain_sample(
            d.reconstruct(), geom, sampling.random_complex(rng), sampling.random_complex(rng)
        )
        worst = max(worst, max(abs(r) for r in extensions.apply_bc_alpha(alpha, bd)))
    return worst, ctx.samples


def _suite_boundary_form(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        _, _, alpha = _random_alpha_case(rng, ctx)
        psi = extensions.boundary_data_for_alpha(
            alpha, sampling.random_complex(rng), sampling.random_complex(rng)
        )
        phi = extensions.boundary_data_for_alpha(
            alpha, sampling.random_complex(rng), sampling.random_complex(rng)
        )
        size = max(np.max(np.abs(psi.plus)), 1.0) * max(np.max(np.abs(phi.plus)), 1.0)
        worst = max(worst, _relative(abs(extensions.boundary_form(psi, phi)), size))

        rho = sampling.random_rho(rng)
        psi = extensions.boundary_data_for_rho(
            rho, sampling.random_complex(rng), sampling.random_complex(rng)
        )
        phi = extensions.boundary_data_for_rho(
            rho, sampling.random_complex(rng), sampling.random_complex(rng)
        )
        worst = max(worst, _relative(abs(extensions.boundary_form(psi, phi)), 10.0))
    return worst, ctx.samples


def _suite_phase_form(rng, ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        _, _, alpha = _random_alpha_case(rng, ctx)
        form = extensions.extract_phase(alpha)
        worst = max(
            worst,
            form.matrix().max_distance(alpha.boundary_matrix()),
            abs(form.determinant() - 1.0),
        )
    return worst, ctx.samples


def _sweep_extensions(rng, ctx):
    count = min(ctx.samples, SWEEP_EXTENSIONS)
    for i in range(count):
        geom = _geometry(rng, ctx)
        ext = sampling.random_class_alpha(rng) if i % 2 == 0 else sampling.random_rho(rng)
        yield ext, geom


def _suite_flux(rng, ctx):
    worst, count = 0.0, 0
    for ext, geom in _sweep_extensions(rng, ctx):
        for side in Side:
            results = scattering.scatter_sweep(ext, geom, ctx.ks, side)
            worst = max(worst, max(r.flux_residual for r in results))
        count += 1
    return worst, count


def _suite_smatrix(rng, ctx):
    worst, count = 0.0, 0
    for ext, geom in _sweep_extensions(rng, ctx):
        worst = max(worst, scattering.unitarity_defect(scattering.smatrix_sweep(ext, geom, ctx.ks)))
        count += 1
    return worst, count


def _suite_phase_covariance(rng, ctx):
    count = min(ctx.samples, SWEEP_EXTENSIONS)
    log_lo, log_hi = math.log(ctx.ks[0]), math.log(ctx.ks[-1])
    worst = 0.0
    for _ in range(count):
        geom = _geometry(rng, ctx)
        alpha = sampling.random_class_alpha(rng)
        phi = float(rng.uniform(0.0, TWO_PI))
        k = math.exp(rng.uniform(log_lo, log_hi))
        scaled = alpha.scaled(phi)
        for side, sign in ((Side.LEFT, 1.0), (Side.RIGHT, -1.0)):
            before = scattering.scatter(alpha, geom, k, side)
            after = scattering.scatter(scaled, geom, k, side)
            shift = cmath.phase(after.t) - cmath.phase(before.t)
            worst = max(
                worst,
                _angle_distance(shift, sign * phi),
                abs(abs(after.t) - abs(before.t)),
                abs(abs(after.r) - abs(before.r)),
            )
    return worst, count


def _suite_delta_oracle(rng, ctx):
    geom = JunctionGeometry(0.0)
    worst = 0.0
    for c in DELTA_STRENGTHS:
        alpha = AlphaVector(1.0 + 0j, 0j, complex(-c), 1.0 + 0j)
        states = scattering.bound_states(alpha, geom)
        if len(states) != 1:
            return math.inf, len(DELTA_STRENGTHS)
        worst = max(worst, abs(states[0].energy + c * c / 4.0))
        t = np.array([r.t for r in scattering.scatter_sweep(alpha, geom, ctx.ks)])
        expected = ctx.ks**2 / (ctx.ks**2 + c * c / 4.0)
        worst = max(worst, float(np.max(np.abs(np.abs(t) ** 2 - expected))))
    return worst, len(DELTA_STRENGTHS)


def _suite_deficiency_norm(rng, ctx):
    count = min(ctx.samples, DEFICIENCY_NORM_SAMPLES)
    worst = 0.0
    for _ in range(count):
        geom = _geometry(rng, ctx)
        for tag in DeficiencyTag:
            f = DeficiencyFunction(tag, geom)
            worst = max(
                worst,
                abs(deficiency.deficiency_norm(f) - 1.0),
                abs(deficiency.deficiency_norm_quadrature(f) - 1.0),
            )
    return worst, count


def _suite_rel2(rng, ctx):
    count = min(ctx.samples, SWEEP_EXTENSIONS)
    worst = 0.0
    for _ in range(count):
        geom = _geometry(rng, ctx)
        lam = geom.lam

        def value(tag, x):
            return deficiency.eval_deficiency(DeficiencyFunction(tag, geom), x)

        r_plus = value(DeficiencyTag.R_PLUS, lam)
        r_minus = value(DeficiencyTag.R_MINUS, lam)
        worst = max(
            worst,
            abs(value(DeficiencyTag.L_PLUS, -lam) - r_plus),
            abs(value(DeficiencyTag.L_MINUS, -lam) - r_minus),
            abs(r_minus - r_plus.conjugate()),
            abs(r_plus.conjugate() - r_plus * cmath.exp(-1j * SQRT2 * lam)),
        )
    return worst, count


def _suite_eigen_relation(rng, ctx):
    count = min(ctx.samples, SWEEP_EXTENSIONS)
    tags = list(DeficiencyTag)
    worst = 0.0
    for i in range(count):
        geom = _geometry(rng, ctx)
        f = DeficiencyFunction(tags[i % len(tags)], geom)
        depth = float(rng.uniform(0.1, 2.0))
        x = -geom.lam - depth if f.tag.is_left else geom.lam + depth
        size = abs(deficiency.eval_deficiency(f, x))
        worst = max(worst, _relative(deficiency.eigen_relation_residual(f, x, EIGEN_STEP), size))
    return worst, count


SUITES: list[tuple[str, Callable]] = [
    ("decomposition", _suite_decomposition),
    ("class_alpha", _suite_class_alpha),
    ("lemma1", _suite_lemma1),
    ("roundtrip_a", _suite_roundtrip_a),
    ("roundtrip_b", _suite_roundtrip_b),
    ("rho_roundtrip", _suite_rho_roundtrip),
    ("rho_infinite", _suite_rho_infinite),
    ("oracle", _suite_oracle),
    ("domain", _suite_domain),
    ("boundary_form", _suite_boundary_form),
    ("phase_form", _suite_phase_form),
    ("flux", _suite_flux),
    ("smatrix", _suite_smatrix),
    ("phase_covariance", _suite_phase_covariance),
    ("delta_oracle", _suite_delta_oracle),
    ("deficiency_norm", _suite_deficiency_norm),
    ("rel2", _suite_rel2),
    ("eigen_relation", _suite_eigen_relation),
]


def _run_suite(name: str, suite: Callable, rng: Generator, ctx: SuiteContext, tolerance: float) -> SuiteResult:
    try:
        residual, count = suite(rng, ctx)
    except Exception as e:
        Logger.log_error(f"verify: suite '{name}' raised {type(e).__name__}: {e}")
        return SuiteResult(name, math.inf, tolerance, 0, False, f"{type(e).__name__}: {e}")
    residual = float(residual)
    result = SuiteResult(name, residual, tolerance, count, residual <= tolerance)
    if result.passed:
        Logger.log_info(f"verify: {name} ok, max residual {residual:.3e} <= {tolerance:.1e}")
    else:
        Logger.log_error(f"verify: {name} FAILED, max residual {residual:.3e} > {tolerance:.1e}")
    return result


def run_verification(
    seed: int = 0,
    samples: int = 1000,
    lambda_max: float = 3.0,
    tolerances: dict | None = None,
    tolerance_override: float | None = None,
    min_gamma2: float = sampling.MIN_GAMMA2,
    ks: np.ndarray | None = None,
) -> VerificationReport:
    """
    Runs every property suite and collects the worst residual of each.

    Each suite draws from its own generator spawned from ``seed``, so a report
    depends only on (seed, samples, lambda_max, tolerances).

    :param tolerances: Per-suite tolerances; missing names use the defaults.
    :param tolerance_override: When given, replaces every suite tolerance.
    :param ks: Wavenumber grid of the scattering suites (256 log-spaced points
        on [1e-2, 1e2] by default).
    :raises ValueError: If samples < 1 or lambda_max < 0.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if lambda_max < 0:
        raise ValueError(f"lambda_max must be >= 0, got {lambda_max}")

    merged = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    ctx = SuiteContext(
        samples=samples,
        lambda_max=lambda_max,
        min_gamma2=min_gamma2,
        ks=scattering.k_grid(1e-2, 1e2, 256) if ks is None else np.asarray(ks, dtype=float),
    )
    generators = sampling.spawn_generators(seed, len(SUITES))

    Logger.log_info(f"verify: seed={seed} samples={samples} lambda_max={lambda_max}")
    suites = [
        _run_suite(
            name,
            suite,
            rng,
            ctx,
            tolerance_override if tolerance_override is not None else float(merged[name]),
        )
        for (name, suite), rng in zip(SUITES, generators)
    ]
    return VerificationReport(seed=seed, samples=samples, lambda_max=lambda_max, suites=suites)
