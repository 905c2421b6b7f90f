from __future__ import annotations
import argparse
import logging

from rsched.cli.commands import (BuildCommand, Command, CommandResult, CompareCommand, ExportLpCommand, GenCommand,
                                 ProjectCommand, Reduce3SatCommand, ValidateCommand, VerifyReductionCommand,
                                 SolveCommand)
from rsched.config import Settings
from rsched.errors import RschedError, UsageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2


class CommandExecutor:
    """
    Handles running the subcommands of the command line
    """
    def __init__(self, settings: Settings) -> None:
        self.__settings = settings
        self.__commands: dict[str, Command] = {
            "validate": ValidateCommand(),
            "build": BuildCommand(),
            "solve": SolveCommand(),
            "compare": CompareCommand(),
            "project": ProjectCommand(),
            "reduce-3sat": Reduce3SatCommand(),
            "verify-reduction": VerifyReductionCommand(),
            "gen": GenCommand(),
            "export-lp": ExportLpCommand(),
        }

    @property
    def names(self) -> list[str]:
        return list(self.__commands)

    def run(self, name: str, args: argparse.Namespace) -> CommandResult:
        """
        Run one command; errors become a result with the matching exit code
        """
        command = self.__commands.get(name)
        if command is None:
            return CommandResult(EXIT_USAGE, f"unknown command {name!r}\n", True)
        command.set_command(args, self.__settings)
        try:
            return command.execute()
        except UsageError as e:
            return CommandResult(EXIT_USAGE, f"error: {e}\n", True)
        except (RschedError, OSError) as e:
            logger.debug("%s failed", name, exc_info=True)
            return CommandResult(EXIT_FINDINGS, f"error: {type(e).__name__}: {e}\n", True)
