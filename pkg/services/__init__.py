# Services package - Numerical operations and run orchestration


from . import grid_service, stochastics_service
from . import kalman, model
from . import menkf_service
from . import experiment
from . import config_service, run_service
from .menkf_service import (
    menkf_analysis,
    menkf_analysis_report,
    menkf_forecast,
    ram_ratio,
    regularization_metric,
)

__all__ = [
    "grid_service",
    "stochastics_service",
    "kalman",
    "model",
    "menkf_service",
    "experiment",
    "config_service",
    "run_service",
    "menkf_analysis",
    "menkf_analysis_report",
    "menkf_forecast",
    "ram_ratio",
    "regularization_metric",
]
