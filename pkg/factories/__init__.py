# Factories package - Business rules turning validated config into domain objects


from .ensemble_factory import EnsembleFactory
from .experiment_factory import ExperimentFactory
from .grid_factory import GridFactory
from .model_factory import ModelFactory, configuration_error

__all__ = [
    "EnsembleFactory",
    "ExperimentFactory",
    "GridFactory",
    "ModelFactory",
    "configuration_error",
]
