import argparse
import sys

from cli import codec
from cli.codec import PayloadParseError
from cli.commands import COMMANDS, PAYLOAD_FREE, CommandContext, CommandResult, dispatch
from configs import (
    DEFAULT_CONFIG_PATH,
    DEFAULT_LOGGING_PATH,
    CliConfig,
    CliConfigError,
    ConfigLoader,
)
from modules.exception_handler import ExceptionHandler
from modules.logger import Logger, LogLevel

LOGGER_NAME = "junction"

DESCRIPTION = (
    "Self-adjoint extensions of -d^2/dx^2 on the line with the segment "
    "[-lambda, +lambda] removed: conversions, validation, scattering and checks."
)


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as exceptions instead of exiting with 2."""

    def error(self, message):
        raise CliConfigError(f"{self.prog}: {message}")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=float, help="junction half-length (>= 0)")
    common.add_argument("--tol", type=float, help="tolerance; for verify it replaces every suite tolerance")
    common.add_argument("--k-min", dest="k_min", type=float, help="smallest wavenumber of the sweep")
    common.add_argument("--k-max", dest="k_max", type=float, help="largest wavenumber of the sweep")
    common.add_argument("--k-steps", dest="k_steps", type=int, help="number of log-spaced wavenumbers")
    common.add_argument("--side", choices=["left", "right"], help="incidence side")
    common.add_argument("--seed", type=int, help="seed of the verification samplers")
    common.add_argument("--samples", type=int, help="samples per verification suite")
    common.add_argument("--lambda-max", dest="lambda_max", type=float, help="largest lambda drawn by verify")
    common.add_argument("--output", help="output path, '-' for stdout")
    common.add_argument("--config", help="alternative YAML configuration file")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> CliArgumentParser:
    common = _common_options()
    parser = CliArgumentParser(prog="junction", description=DESCRIPTION)
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    helps = {
        "decompose": "factor a unitary U into (gamma1, gamma2, gamma3)",
        "u2alpha": "non-diagonal U to its Class alpha vector",
        "alpha2u": "Class alpha vector to its unitary U",
        "u2rho": "diagonal U to its (rho_plus, rho_minus)",
        "rho2u": "(rho_plus, rho_minus) to its diagonal U",
        "phase": "phase form of an alpha vector (and arg t with --k)",
        "scatter": "reflection/transmission sweep as CSV",
        "bound": "bound states of an extension",
        "verify": "run the seeded property suites",
    }
    for name in COMMANDS:
        sub = subparsers.add_parser(name, parents=[common], help=helps[name])
        if name not in PAYLOAD_FREE:
            sub.add_argument("payload", nargs="?", default="-", help="JSON file, '-' for stdin")
        if name == "phase":
            sub.add_argument("--k", type=float, help="wavenumber for the transmission phase")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    names = ("lam", "k_min", "k_max", "k_steps", "side", "seed", "samples", "lambda_max", "output")
    overrides = {name: getattr(args, name, None) for name in names}
    overrides["tol_override"] = args.tol
    return overrides


def _read_payload(source: str, stdin):
    if source == "-":
        text = stdin.read()
    else:
        try:
            with open(source, "r") as file:
                text = file.read()
        except OSError as e:
            raise PayloadParseError(f"Cannot read payload file {source}: {e}") from e
    return codec.load_json(text)


def _write_output(text: str, output: str, stdout) -> None:
    if output == "-":
        stdout.write(text)
        return
    try:
        with open(output, "w", newline="") as file:
            file.write(text)
    except OSError as e:
        raise CliConfigError(f"Cannot write output file {output}: {e}") from e


def _configure_logging(verbose: bool) -> None:
    Logger.configure_logger(LOGGER_NAME, DEFAULT_LOGGING_PATH)
    if verbose:
        Logger.set_level(LogLevel.for_verbosity(verbose))


def run(argv: list[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    """
    Runs one command and returns its exit code (0, 2 or 3).

    Results go to stdout (or --output); diagnostics and error documents go to
    stderr.
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    command = "N/A"
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        _configure_logging(args.verbose)

        config_path = args.config or DEFAULT_CONFIG_PATH
        config = CliConfig.load(config_path, _overrides(args))
        ctx = CommandContext(
            config=config,
            extension_settings=ConfigLoader.load_section(config_path, "extensions"),
            verify_settings=ConfigLoader.load_section(config_path, "verify"),
            k=getattr(args, "k", None),
        )
        payload = None if command in PAYLOAD_FREE else _read_payload(args.payload, stdin)

        Logger.log_info(f"Running '{command}' with lambda={config.lam}")
        result: CommandResult = dispatch(command, payload, ctx)
        _write_output(result.output, config.output, stdout)
        if result.message:
            Logger.log_info(f"'{command}' finished with exit code {int(result.exit_code)}")
            stderr.write(result.message + "\n")
        return int(result.exit_code)
    except Exception as e:
        document = ExceptionHandler.handle_exception(e, {"command": command})
        stderr.write(codec.dumps(document))
        return int(ExceptionHandler.exit_code_for(e))


def main() -> None:
    sys.exit(run())


__all__ = ["CliArgumentParser", "build_parser", "run", "main"]
