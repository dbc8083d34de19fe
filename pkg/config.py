"""
Configuration management for the Block algebra toolkit.
Uses environment variables with sensible defaults.
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional
from dotenv import load_dotenv
load_dotenv()


def _log_level(value: Optional[str]) -> int:
    if value is None:
        return logging.INFO
    if value.isdigit():
        return int(value)
    return getattr(logging, value.upper(), logging.INFO)


class Config:
    """Configuration class for the Block algebra toolkit."""

    # Logging settings
    LOG_LEVEL: int = _log_level(os.getenv("BLOCKALG_LOG_LEVEL", os.getenv("LOG_LEVEL")))

    # Reports
    REPORT_VERBOSITY: str = os.getenv("BLOCKALG_REPORT_VERBOSITY", "checks")
    REPORT_DIR: Path = Path(os.getenv("BLOCKALG_REPORT_DIR", "reports"))

    # Module verification bounds
    WINDOW: int = int(os.getenv("BLOCKALG_WINDOW", "8"))
    ALPHA_MAX: int = int(os.getenv("BLOCKALG_ALPHA_MAX", "4"))
    I_MAX: int = int(os.getenv("BLOCKALG_I_MAX", "6"))

    # Label truncation N and the seed of the random samples
    TRUNCATION: int = int(os.getenv("BLOCKALG_TRUNCATION", "12"))
    SEED: int = int(os.getenv("BLOCKALG_SEED", "20240601"))

    @classmethod
    def ensure_directories(cls) -> None:
        """Create the report directory if it doesn't exist."""
        cls.REPORT_DIR.mkdir(parents=True, exist_ok=True)

    @classmethod
    def module_bounds(cls) -> Dict[str, int]:
        """Window, alpha and level bounds for module verification."""
        return {
            "window": cls.WINDOW,
            "alpha_max": cls.ALPHA_MAX,
            "i_max": cls.I_MAX,
        }

    @classmethod
    def suite_options(cls) -> Dict[str, Any]:
        """Keyword options passed to the verification suites."""
        options: Dict[str, Any] = dict(cls.module_bounds())
        options["truncation"] = cls.TRUNCATION
        options["seed"] = cls.SEED
        return options

    @classmethod
    def report_path(cls, name: str) -> Path:
        """A bare file name goes to REPORT_DIR; any other path is used as given."""
        path = Path(name)
        if path.parent == Path("."):
            cls.ensure_directories()
            return cls.REPORT_DIR / path
        return path

    @classmethod
    def describe(cls) -> Dict[str, Any]:
        """Current settings as a dictionary."""
        return {
            "log_level": logging.getLevelName(cls.LOG_LEVEL),
            "report_verbosity": cls.REPORT_VERBOSITY,
            "report_dir": str(cls.REPORT_DIR),
            "window": cls.WINDOW,
            "alpha_max": cls.ALPHA_MAX,
            "i_max": cls.I_MAX,
            "truncation": cls.TRUNCATION,
            "seed": cls.SEED,
        }
