"""Config service - parsing, validation, serialization and overrides of run configurations"""

import logging
from typing import Any, List, Optional, Tuple

import yaml
from pydantic import ValidationError

from data_access import config_dal
from factories import ExperimentFactory, configuration_error
from schemas import AssimilationConfig
from utils import ConfigurationError

logger = logging.getLogger("menkf_app")

SECTIONS = ("model", "grid", "filter", "menkf", "experiment")


def validate_config(data: dict) -> AssimilationConfig:
    """Schema validation plus the eager semantic checks of the factories."""
    try:
        config = AssimilationConfig.model_validate(data)
    except ValidationError as e:
        error = configuration_error(e)
        logger.error(f"CONFIG: invalid configuration: {error.message}")
        raise error from e
    ExperimentFactory.create_from_config(config)
    return config


def parse_config(path) -> AssimilationConfig:
    config = validate_config(config_dal.read_config_file(path))
    logger.info(f"CONFIG: parsed {path} ({config.model.kind}, r_C={config.grid.coarsening_ratio})")
    return config


def parse_config_text(text: str) -> AssimilationConfig:
    return validate_config(config_dal.parse_config_text(text))


def serialize_config(config: AssimilationConfig) -> str:
    return yaml.safe_dump(config.model_dump(mode="json"), sort_keys=False)


def resolve_key(config: AssimilationConfig, key: str) -> Tuple[str, ...]:
    """Dotted path for key; a bare key is looked up in every section and must be unique."""
    data = config.model_dump(mode="json")
    if "." in key:
        path = tuple(key.split("."))
        node = data
        for part in path:
            if not isinstance(node, dict) or part not in node:
                raise ConfigurationError(f"unknown config key '{key}'", key=key)
            node = node[part]
        return path
    if key in data and key not in SECTIONS:
        return (key,)
    matches = [(section, key) for section in SECTIONS if key in data.get(section, {})]
    if len(matches) != 1:
        reason = "unknown" if not matches else "ambiguous"
        raise ConfigurationError(f"{reason} config key '{key}'", key=key)
    return matches[0]


def with_overrides(config: AssimilationConfig, overrides: List[Tuple[str, Any]]) -> AssimilationConfig:
    """New validated config with each (key, value) applied."""
    data = config.model_dump(mode="json")
    for key, value in overrides:
        path = resolve_key(config, key)
        node = data
        for part in path[:-1]:
            node = node.setdefault(part, {})
        node[path[-1]] = value
    return validate_config(data)


def apply_cli_flags(
    config: AssimilationConfig,
    seed: Optional[int] = None,
    output_dir: Optional[str] = None,
    no_state_correction: bool = False,
) -> AssimilationConfig:
    overrides = []
    if seed is not None:
        overrides.append(("seed", seed))
    if output_dir is not None:
        overrides.append(("output_dir", str(output_dir)))
    if no_state_correction:
        overrides.append(("menkf.enable_state_correction", False))
    if not overrides:
        return config
    logger.info(f"CONFIG: applying overrides {[k for k, _ in overrides]}")
    return with_overrides(config, overrides)


def parse_sweep(text: str) -> Tuple[str, List[Any]]:
    """'KEY=V1,V2,...' -> (KEY, [values]); values are read as YAML scalars."""
    key, sep, raw = text.partition("=")
    key = key.strip()
    if not sep or not key or not raw.strip():
        raise ConfigurationError(f"sweep must look like KEY=V1,V2,..., got '{text}'", key="--sweep")
    values = []
    for item in raw.split(","):
        try:
            values.append(yaml.safe_load(item.strip()))
        except yaml.YAMLError as e:
            raise ConfigurationError(f"cannot read sweep value '{item}'", key=key) from e
    return key, values
