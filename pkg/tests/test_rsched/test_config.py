import logging
import os
import unittest
from unittest.mock import patch

from rsched.config import Settings, configure_logging
from rsched.errors import ConfigError


@patch("rsched.config.load_dotenv")
class SettingsTestCase(unittest.TestCase):
    @patch.dict(os.environ, {}, clear=True)
    def test_defaults(self, load_dotenv):
        assert Settings.from_env() == Settings()
        load_dotenv.assert_called_once()

    @patch.dict(os.environ, {"RSCHED_TOL": "1e-9", "RSCHED_NODE_LIMIT": "50", "RSCHED_EXACT": "yes",
                             "RSCHED_LOG_LEVEL": "info", "RSCHED_ORACLE_MAX_TRIPS": ""}, clear=True)
    def test_environment(self, load_dotenv):
        settings = Settings.from_env()
        assert settings.tol == 1e-9
        assert settings.node_limit == 50
        assert settings.exact
        assert settings.log_level == "INFO"
        assert settings.oracle_max_trips == 8

    @patch.dict(os.environ, {"RSCHED_NODE_LIMIT": "many"}, clear=True)
    def test_bad_value(self, load_dotenv):
        with self.assertRaises(ConfigError):
            Settings.from_env()

    def test_overrides(self, load_dotenv):
        settings = Settings().with_overrides(tol=None, node_limit=0, exact=True)
        assert settings.tol == Settings().tol
        assert settings.node_limit == 0
        assert settings.exact


class ConfigureLoggingTestCase(unittest.TestCase):
    def test_levels(self):
        configure_logging("debug")
        assert logging.getLogger().level == logging.DEBUG
        configure_logging(logging.WARNING)
        assert logging.getLogger().level == logging.WARNING
        with self.assertRaises(ConfigError):
            configure_logging("chatty")
