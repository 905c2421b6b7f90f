from __future__ import annotations
from dataclasses import dataclass, replace
import logging
import os

from dotenv import load_dotenv

from rsched.errors import ConfigError


def _env(name: str, default: str) -> str:
    value = os.getenv(name)
    return default if value is None or value == "" else value


@dataclass(frozen=True)
class Settings:
    """
    Runtime knobs. Values come from the environment (a .env file is honoured);
    CLI flags override them through `with_overrides`.
    """
    tol: float = 1e-7
    int_tol: float = 1e-6
    node_limit: int = 100_000
    exact: bool = False
    oracle_max_trips: int = 8
    oracle_max_units: int = 3
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> Settings:
        load_dotenv()
        try:
            return cls(
                tol=float(_env("RSCHED_TOL", "1e-7")),
                int_tol=float(_env("RSCHED_INT_TOL", "1e-6")),
                node_limit=int(_env("RSCHED_NODE_LIMIT", "100000")),
                exact=_env("RSCHED_EXACT", "0").lower() in ("1", "true", "yes"),
                oracle_max_trips=int(_env("RSCHED_ORACLE_MAX_TRIPS", "8")),
                oracle_max_units=int(_env("RSCHED_ORACLE_MAX_UNITS", "3")),
                log_level=_env("RSCHED_LOG_LEVEL", "WARNING").upper(),
            )
        except ValueError as e:
            raise ConfigError(f"bad RSCHED_* environment value: {e}") from e

    def with_overrides(self, **kwargs) -> Settings:
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def configure_logging(level: str | int) -> None:
    if isinstance(level, str):
        name = level.upper()
        level = logging.getLevelName(name)
        if not isinstance(level, int):
            raise ConfigError(f"unknown log level {name!r}")
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger().setLevel(level)
