import argparse
import unittest
from unittest.mock import MagicMock, patch

from rsched.cli.commands import CommandResult, ValidateCommand
from rsched.cli.executor import EXIT_FINDINGS, EXIT_USAGE, CommandExecutor
from rsched.config import Settings
from rsched.errors import InfeasibleInstance, UsageError


class CommandExecutorTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.executor = CommandExecutor(Settings())
        self.args = argparse.Namespace(instance="TwoTrip", json=False)

    def test_executor_init(self):
        assert self.executor.names == ["validate", "build", "solve", "compare", "project", "reduce-3sat",
                                       "verify-reduction", "gen", "export-lp"]
        assert isinstance(self.executor._CommandExecutor__commands["validate"], ValidateCommand)

    def test_run(self):
        assert self.executor.run("validate", self.args) == CommandResult(0, "valid\n")

    def test_unknown_command(self):
        result = self.executor.run("frobnicate", self.args)
        assert result.exit_code == EXIT_USAGE and result.to_stderr

    @patch.object(ValidateCommand, "execute")
    def test_errors_become_exit_codes(self, execute: MagicMock):
        execute.side_effect = UsageError("bad flag")
        assert self.executor.run("validate", self.args) == CommandResult(EXIT_USAGE, "error: bad flag\n", True)
        execute.side_effect = InfeasibleInstance("no composition")
        result = self.executor.run("validate", self.args)
        assert result.exit_code == EXIT_FINDINGS
        assert result.output == "error: InfeasibleInstance: no composition\n"
