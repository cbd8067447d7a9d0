"""Configuration management for quiver Hecke computations."""

import os
from pathlib import Path
from typing import Optional

from quiver_hecke.polys import field_domain

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {value!r}") from e


class Config:
    """
    Centralized configuration for quiver Hecke computations.

    Every setting falls back to a KLR_* environment variable (loaded from .env
    by the command line front end) and then to a built-in default.
    """

    def __init__(
        self,
        field: Optional[str] = None,
        trunc: Optional[int] = None,
        ceiling: Optional[int] = None,
        level_start: Optional[int] = None,
        level_cap: Optional[int] = None,
        workers: Optional[int] = None,
        seed: Optional[int] = None,
        fuel: Optional[int] = None,
        data_dir: Optional[str] = None,
        log_level: Optional[str] = None,
    ):
        """
        Initialize configuration.

        Args:
            field: base field, 'Q' or 'Fp:<p>' (defaults to KLR_FIELD or 'Q')
            trunc: truncation depth N of k[z]/z^N (defaults to KLR_TRUNC or 4)
            ceiling: degree window for infinite-dimensional modules (KLR_CEILING or 8)
            level_start: first localization level (KLR_LEVEL_START or 2)
            level_cap: highest localization level; levels double up to it (KLR_LEVEL_CAP or 8)
            workers: worker threads for suites (KLR_WORKERS or 4)
            seed: seed for randomized spot checks (KLR_SEED or 0)
            fuel: rewriting steps per product (KLR_FUEL or 10^7)
            data_dir: directory for reports and caches (KLR_DATA_DIR or 'data')
            log_level: logging level name (KLR_LOG_LEVEL or 'WARNING')
        """
        self.field = field or os.getenv("KLR_FIELD", "Q")
        self.trunc = trunc if trunc is not None else _env_int("KLR_TRUNC", 4)
        self.ceiling = ceiling if ceiling is not None else _env_int("KLR_CEILING", 8)
        self.level_start = (level_start if level_start is not None
                            else _env_int("KLR_LEVEL_START", 2))
        self.level_cap = level_cap if level_cap is not None else _env_int("KLR_LEVEL_CAP", 8)
        self.workers = workers if workers is not None else _env_int("KLR_WORKERS", 4)
        self.seed = seed if seed is not None else _env_int("KLR_SEED", 0)
        self.fuel = fuel if fuel is not None else _env_int("KLR_FUEL", 10**7)
        self.data_dir = Path(data_dir or os.getenv("KLR_DATA_DIR", "data"))
        self.log_level = (log_level or os.getenv("KLR_LOG_LEVEL", "WARNING")).upper()

    @property
    def reports_dir(self) -> Path:
        """Directory for JSON verification reports."""
        return self.data_dir / "reports"

    @property
    def modules_dir(self) -> Path:
        """Directory for JSON module dumps."""
        return self.data_dir / "modules"

    def domain(self):
        """The base field as a sympy domain."""
        return field_domain(self.field)

    def validate(self) -> None:
        """
        Validate configuration.

        Raises:
            ValueError: on an unknown field, a bad prime or an out-of-range setting
        """
        self.domain()
        if self.trunc < 2:
            raise ValueError(f"truncation must be at least 2, got {self.trunc}")
        if self.ceiling < 0:
            raise ValueError(f"ceiling must be non-negative, got {self.ceiling}")
        if self.level_start < 1:
            raise ValueError(f"level start must be positive, got {self.level_start}")
        if self.level_cap < self.level_start:
            raise ValueError(
                f"level cap {self.level_cap} is below the level start {self.level_start}"
            )
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        if self.fuel < 1:
            raise ValueError(f"fuel must be positive, got {self.fuel}")
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"unknown log level {self.log_level!r}; choose from {LOG_LEVELS}")

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "field": self.field,
            "trunc": self.trunc,
            "ceiling": self.ceiling,
            "level_start": self.level_start,
            "level_cap": self.level_cap,
            "workers": self.workers,
            "seed": self.seed,
            "fuel": self.fuel,
        }


# Global config singleton
_config: Optional[Config] = None


def get_config() -> Config:
    """
    Get the global Config instance.

    Returns:
        The global Config instance

    Raises:
        RuntimeError: If config not initialized. Call set_config() first.
    """
    if _config is None:
        raise RuntimeError("Config not initialized. Call set_config() first.")
    return _config


def set_config(config: Config) -> None:
    """
    Set the global Config instance.

    Args:
        config: Config instance to set as global
    """
    global _config
    _config = config
