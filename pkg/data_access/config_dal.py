"""Config file Data Access Layer"""

import logging
from pathlib import Path

import yaml

from utils import ConfigurationError, StorageError

logger = logging.getLogger("menkf_app")


def read_config_file(path) -> dict:
    """Load a YAML config file as a mapping; an empty file yields {}."""
    path = Path(path)
    logger.info(f"DAL: reading config {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"DAL: cannot read config {path}: {e}", exc_info=True)
        raise StorageError(f"cannot read config file {path}: {e.strerror or e}", context={"path": str(path)}) from e
    return parse_config_text(text, source=str(path))


def parse_config_text(text: str, source: str = "<string>") -> dict:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(e, "problem", None) or str(e)
        raise ConfigurationError(
            f"syntax error in {source}" + (f" at line {line}" if line else "") + f": {problem}",
            line=line,
        ) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"{source} must contain a key-value mapping", line=1)
    return data


def write_config_file(path, text: str):
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise StorageError(f"cannot write config file {path}: {e}", context={"path": str(path)}) from e
    logger.debug(f"DAL: wrote config {path}")
