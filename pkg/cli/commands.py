from dataclasses import dataclass, field
from typing import Callable

from cli import codec
from configs import CliConfig
from core import deficiency, extensions, scattering, verification
from core.extensions import DiagonalExtensionError, NonDiagonalExtensionError
from modules.exception_handler import ExitCode
from modules.logger import Logger
from utils.types import Diagonal, JunctionGeometry, NonDiagonal, ValidationReport


@dataclass(frozen=True)
class CommandContext:
    """
    Everything a command needs besides its payload.

    ``extension_settings`` and ``verify_settings`` are the ``extensions`` and
    ``verify`` sections of the YAML configuration.
    """

    config: CliConfig
    extension_settings: dict = field(default_factory=dict)
    verify_settings: dict = field(default_factory=dict)
    k: float | None = None

    @property
    def geom(self) -> JunctionGeometry:
        return JunctionGeometry(self.config.lam)

    def setting(self, name: str, default: float) -> float:
        return float(self.extension_settings.get(name, default))


@dataclass(frozen=True)
class CommandResult:
    output: str
    exit_code: ExitCode = ExitCode.SUCCESS
    message: str | None = None


def _report_document(report: ValidationReport) -> dict:
    return {
        "passed": report.passed,
        "tol": report.tol,
        "determinant_residual": report.determinant_residual,
        "reality_residual_13": report.reality_residual_13,
        "reality_residual_24": report.reality_residual_24,
        "pairwise": {f"{j}{k}": v for (j, k), v in report.pairwise.items()},
    }


def _decomposition_document(d) -> dict:
    return {"gamma1": d.gamma1, "gamma2": d.gamma2, "gamma3": d.gamma3}


def _tol_class_alpha(ctx: CommandContext) -> float:
    return ctx.setting("tol_class_alpha", extensions.TOL_CLASS_ALPHA)


def cmd_decompose(payload, ctx: CommandContext) -> CommandResult:
    u = extensions.as_unitary(codec.parse_matrix(payload), ctx.config.tol)
    d = extensions.decompose_u2(u, ctx.config.tol, ctx.setting("branch_tol", extensions.BRANCH_TOL))
    document = {
        **_decomposition_document(d),
        "reconstruction_residual": d.reconstruct().max_distance(u),
        "unitarity_residual": extensions.unitarity_residual(u),
    }
    return CommandResult(codec.dumps(document))


def cmd_u2alpha(payload, ctx: CommandContext) -> CommandResult:
    u = codec.parse_matrix(payload)
    kind = extensions.classify(u, ctx.config.tol, ctx.config.tol)
    if isinstance(kind, Diagonal):
        raise DiagonalExtensionError("U is diagonal: the extension is decoupled (BC rho), use u2rho")
    d = kind.decomposition
    alpha = extensions.u_to_alpha(d, ctx.geom, ctx.setting("gamma2_warning", extensions.GAMMA2_WARNING))
    report = extensions.require_class_alpha(alpha, _tol_class_alpha(ctx))
    oracle = deficiency.oracle_boundary_matrix(d, ctx.geom)
    document = {
        "alpha": list(alpha.components()),
        "ill_conditioned": alpha.ill_conditioned,
        "decomposition": _decomposition_document(d),
        "validation": _report_document(report),
        "oracle_residual": oracle.max_distance(alpha.boundary_matrix()),
    }
    return CommandResult(codec.dumps(document))


def cmd_alpha2u(payload, ctx: CommandContext) -> CommandResult:
    alpha = codec.parse_alpha(payload)
    report = extensions.require_class_alpha(alpha, _tol_class_alpha(ctx))
    d, u = extensions.alpha_to_u(alpha, ctx.geom, _tol_class_alpha(ctx))
    roundtrip = extensions.u_to_alpha(d, ctx.geom).max_distance(alpha)
    document = {
        "u": u,
        "decomposition": _decomposition_document(d),
        "validation": _report_document(report),
        "roundtrip_residual": roundtrip,
    }
    return CommandResult(codec.dumps(document))


def cmd_u2rho(payload, ctx: CommandContext) -> CommandResult:
    u = codec.parse_matrix(payload)
    kind = extensions.classify(u, ctx.config.tol, ctx.config.tol)
    if isinstance(kind, NonDiagonal):
        raise NonDiagonalExtensionError("U is not diagonal: the extension transmits (BC alpha), use u2alpha")
    rho = extensions.u_to_rho(
        kind.gamma_l,
        kind.gamma_r,
        ctx.geom,
        ctx.setting("tol_dirichlet", extensions.TOL_DIRICHLET),
        ctx.config.tol,
    )
    document = {
        "rho_plus": codec.encode_extended(rho.rho_plus),
        "rho_minus": codec.encode_extended(rho.rho_minus),
        "roundtrip_residual": extensions.rho_to_u(rho, ctx.geom).max_distance(
            extensions.as_unitary(u, ctx.config.tol)
        ),
    }
    return CommandResult(codec.dumps(document))


def cmd_rho2u(payload, ctx: CommandContext) -> CommandResult:
    rho = codec.parse_rho(payload)
    u = extensions.rho_to_u(rho, ctx.geom)
    document = {"u": u, "gamma_l": u.m11, "gamma_r": u.m22}
    return CommandResult(codec.dumps(document))


def cmd_phase(payload, ctx: CommandContext) -> CommandResult:
    alpha = codec.parse_alpha(payload)
    extensions.require_class_alpha(alpha, _tol_class_alpha(ctx))
    form = extensions.extract_phase(alpha)
    document = {
        "theta": form.theta,
        "a1": form.a1,
        "a2": form.a2,
        "a3": form.a3,
        "a4": form.a4,
        "determinant": form.determinant(),
    }
    if ctx.k is not None:
        document["k"] = ctx.k
        document["side"] = ctx.config.side.value
        document["transmission_phase"] = scattering.transmission_phase(
            alpha, ctx.geom, ctx.k, ctx.config.side
        )
    return CommandResult(codec.dumps(document))


def cmd_bound(payload, ctx: CommandContext) -> CommandResult:
    ext = codec.parse_extension(payload)
    states = scattering.bound_states(ext, ctx.geom)
    document = {
        "bound_states": [
            {
                "kappa": s.kappa,
                "energy": s.energy,
                "c": s.c,
                "left_amplitude": s.left_amplitude,
                "right_amplitude": s.right_amplitude,
                "island": s.island,
                "multiplicity": s.multiplicity,
            }
            for s in states
        ]
    }
    return CommandResult(codec.dumps(document))


def cmd_scatter(payload, ctx: CommandContext) -> CommandResult:
    ext = codec.parse_extension(payload)
    cfg = ctx.config
    ks = scattering.k_grid(cfg.k_min, cfg.k_max, cfg.k_steps)
    results = scattering.scatter_sweep(ext, ctx.geom, ks, cfg.side)
    output = codec.scattering_csv(results, scattering.TOL_PHASE)

    violations = [r for r in results if r.flux_residual > cfg.tol]
    if violations:
        worst = max(violations, key=lambda r: r.flux_residual)
        return CommandResult(
            output,
            ExitCode.VALIDATION_FAILURE,
            f"Flux conservation violated at {len(violations)} k-point(s); "
            f"worst {worst.flux_residual:.3e} at k={worst.k:.6g} (tol {cfg.tol:.1e})",
        )
    return CommandResult(output)


def cmd_verify(payload, ctx: CommandContext) -> CommandResult:
    cfg = ctx.config
    settings = ctx.verify_settings
    report = verification.run_verification(
        seed=cfg.seed,
        samples=cfg.samples,
        lambda_max=cfg.lambda_max,
        tolerances=settings.get("tolerances") or {},
        tolerance_override=cfg.tol_override,
        min_gamma2=float(settings.get("min_gamma2", 0.01)),
    )
    document = {
        "seed": report.seed,
        "samples": report.samples,
        "lambda_max": report.lambda_max,
        "passed": report.passed,
        "failing": report.failing,
        "suites": [
            {
                "name": s.name,
                "max_residual": s.max_residual,
                "tolerance": s.tolerance,
                "samples": s.samples,
                "passed": s.passed,
                **({"error": s.error} if s.error else {}),
            }
            for s in report.suites
        ],
    }
    if report.passed:
        return CommandResult(codec.dumps(document))
    return CommandResult(
        codec.dumps(document),
        ExitCode.VALIDATION_FAILURE,
        f"Verification failed: {', '.join(report.failing)}",
    )


COMMANDS: dict[str, Callable] = {
    "decompose": cmd_decompose,
    "u2alpha": cmd_u2alpha,
    "alpha2u": cmd_alpha2u,
    "u2rho": cmd_u2rho,
    "rho2u": cmd_rho2u,
    "phase": cmd_phase,
    "scatter": cmd_scatter,
    "bound": cmd_bound,
    "verify": cmd_verify,
}

PAYLOAD_FREE = {"verify"}


def dispatch(command: str, payload, ctx: CommandContext) -> CommandResult:
    Logger.log_debug(f"dispatch: {command}")
    return COMMANDS[command](payload, ctx)


__all__ = [
    "CommandContext",
    "CommandResult",
    "COMMANDS",
    "PAYLOAD_FREE",
    "dispatch",
]
