"""Run-file loading utilities."""
import logging
from pathlib import Path
from typing import Any, Dict, Union

import yaml
from pydantic import ValidationError

from .models import RunConfig

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Raised when a run file cannot be parsed or violates the schema."""
    pass


def _format_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        key = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{key}: {err['msg']}")
    return "; ".join(parts)


def parse_config_data(data: Dict[str, Any]) -> RunConfig:
    """
    Validate an already-parsed mapping.

    Args:
        data: Mapping as produced by yaml.safe_load (None means empty)

    Returns:
        Validated RunConfig with all defaults filled in

    Raises:
        ConfigError: naming the offending dotted key
    """
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"run file must be a mapping at the top level, got {type(data).__name__}")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc


def parse_config(text: str) -> RunConfig:
    """
    Parse a YAML run document.

    Args:
        text: YAML text; an empty document yields the default configuration

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: with the line number for YAML errors, the dotted key for
            schema errors
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else "unknown line"
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"YAML error at {where}: {problem}") from exc
    return parse_config_data(data)


def serialize_config(config: RunConfig) -> str:
    """Dump the fully defaulted configuration as YAML; parse_config reads it back unchanged."""
    return yaml.safe_dump(config.model_dump(mode="json"), sort_keys=False)


def load_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read run file {path}: {exc}") from exc
    logger.debug("Loaded run file %s", path)
    return parse_config(text)


def override_config(config: RunConfig, **changes) -> RunConfig:
    """
    Copy of config with overrides applied and re-validated.

    Top-level keys are given directly (t_end=0.1); section keys use a double
    underscore (grid__n=32, scheme__dt=1e-4).

    Raises:
        ConfigError: the overridden configuration is invalid
    """
    data = config.model_dump(mode="json")
    for key, value in changes.items():
        section, _, name = key.partition("__")
        if name:
            data[section] = {**data[section], name: value}
        else:
            data[key] = value
    return parse_config_data(data)
