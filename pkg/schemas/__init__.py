# Schemas package - Pydantic schemas for config file validation

from .config_schema import (
    AssimilationConfig,
    BurgersSection,
    EulerSection,
    ExperimentSection,
    FilterSection,
    GridSection,
    MenkfSection,
)

__all__ = [
    "AssimilationConfig",
    "BurgersSection",
    "EulerSection",
    "ExperimentSection",
    "FilterSection",
    "GridSection",
    "MenkfSection",
]
