# Utils package - Utilities, exceptions, and helper functions


from .exceptions import (
    AnalysisError,
    ApplicationError,
    ConfigurationError,
    ContractError,
    LinearAlgebraError,
    NumericalBlowupError,
    PositivityLossError,
    StorageError,
)
from .helpers import FLOAT_FORMAT, hash_text, second_difference_energy
from .logging import LOGGER_NAME, log_run_summary, setup_logging, timed_execution

__all__ = [
    # Exceptions
    "AnalysisError",
    "ApplicationError",
    "ConfigurationError",
    "ContractError",
    "LinearAlgebraError",
    "NumericalBlowupError",
    "PositivityLossError",
    "StorageError",
    # Helpers
    "FLOAT_FORMAT",
    "hash_text",
    "second_difference_energy",
    # Logging
    "LOGGER_NAME",
    "setup_logging",
    "timed_execution",
    "log_run_summary",
]
