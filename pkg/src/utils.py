"""Shared utility functions."""
from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


def get_project_root() -> Path:
    """
    Get the project root directory.

    Returns:
        Path to project root
    """
    return Path(__file__).parent.parent


def get_runs_path(filename: Optional[str] = None) -> Path:
    """
    Get path to the bundled run-file directory or a file inside it.

    Args:
        filename: Optional run filename (e.g. "default.yaml")

    Returns:
        Path to the runs directory or the specific run file
    """
    runs_dir = get_project_root() / "runs"
    if filename:
        return runs_dir / filename
    return runs_dir


class Settings(BaseSettings):
    """Process-wide knobs, overridable through LOGCH_* variables or a .env file."""

    model_config = SettingsConfigDict(env_prefix="LOGCH_", env_file=".env", extra="ignore")

    log_level: str = "INFO"
    runs_dir: Path = get_runs_path()
    output_root: Path = Path("output")

    # Heavy parts of `verify` run on a reduced grid
    verify_small_n: int = 32


settings = Settings()
