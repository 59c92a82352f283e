from modules.exception_handler.exit_codes import ExitCode
from modules.logger import Logger


class ExceptionHandler:
    """
    A centralized handler for exceptions raised while running a command.

    This class logs exceptions through the Logger, maps them onto the exit-code
    contract and formats a unified error document. A 'command' entry can be
    provided in the context; otherwise a default value is used.
    """

    @staticmethod
    def exit_code_for(exc: Exception) -> ExitCode:
        """
        Maps an exception onto an exit code.

        Library and CLI exceptions carry an ``exit_code`` attribute; anything
        else is reported as an input error so that no other code escapes.

        :param exc: Exception to classify.
        :return: The exit code.
        """
        code = getattr(exc, "exit_code", None)
        if isinstance(code, int) and code in {c.value for c in ExitCode}:
            return ExitCode(code)
        return ExitCode.INPUT_ERROR

    @staticmethod
    def handle_exception(exc: Exception, context: dict) -> dict:
        """
        Handles an exception and formats a unified response.

        :param exc: Exception to handle.
        :param context: Additional context, e.g., the subcommand and its input.
        :return: Unified error document.
        :raises TypeError: If `exc` is not an instance of Exception or `context` is not a dictionary.
        """
        if not isinstance(exc, Exception):
            raise TypeError(
                f"`exc` must be an instance of Exception, got {type(exc).__name__}"
            )

        if not isinstance(context, dict):
            raise TypeError(
                f"`context` must be a dictionary, got {type(context).__name__}"
            )

        command = context.get("command", "N/A")
        exit_code = ExceptionHandler.exit_code_for(exc)

        Logger.log_error(
            f"Exception: {type(exc).__name__}. Message: {str(exc)}. "
            f"Context: command={command}, exit_code={int(exit_code)}, extras={context}"
        )

        return {
            "error": {
                "type": type(exc).__name__,
                "message": str(exc),
                "exit_code": int(exit_code),
                "context": {
                    "command": command,
                    **{k: v for k, v in context.items() if k != "command"},
                },
            }
        }
