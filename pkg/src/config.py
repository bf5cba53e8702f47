"""Environment-driven configuration."""

import os
import logging
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from .errors import ConfigError


_FIELDS = ("Q", "Qi")
_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class ToolkitConfig:
    """Settings shared by the CLI and the acceptance runner."""
    field: str = "Q"
    degree: int = 6
    max_doublings: int = 64
    workers: int = 1
    output_dir: Path = Path("./acceptance_results")
    log_level: str = "WARNING"
    seed: int = 20240501


def _int_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_config(dotenv: bool = True) -> ToolkitConfig:
    """Read NCSTAR_* variables, loading a .env file first when present."""
    if dotenv:
        load_dotenv()

    field = os.getenv("NCSTAR_FIELD", "Q")
    if field not in _FIELDS:
        raise ConfigError(f"NCSTAR_FIELD must be one of {_FIELDS}, got {field!r}")

    log_level = os.getenv("NCSTAR_LOG_LEVEL", "WARNING").upper()
    if log_level not in _LEVELS:
        raise ConfigError(f"NCSTAR_LOG_LEVEL must be one of {_LEVELS}, got {log_level!r}")

    return ToolkitConfig(
        field=field,
        degree=_int_env("NCSTAR_DEGREE", 6, 0),
        max_doublings=_int_env("NCSTAR_MAX_DOUBLINGS", 64, 1),
        workers=_int_env("NCSTAR_WORKERS", 1, 1),
        output_dir=Path(os.getenv("NCSTAR_OUTPUT_DIR", "./acceptance_results")),
        log_level=log_level,
        seed=_int_env("NCSTAR_SEED", 20240501, 0),
    )


def configure_logging(config: ToolkitConfig, verbose: bool = False):
    """Configure the root logger for command-line use."""
    level = logging.DEBUG if verbose else getattr(logging, config.log_level)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
