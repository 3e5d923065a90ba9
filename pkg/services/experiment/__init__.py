# Twin-experiment services: truth generation, observation synthesis, diagnostics and the assimilation run

from .diagnostics_service import (
    conservativity_residual,
    gamma_summary,
    mean_rmse,
    relative_rmse,
    rmse,
)
from .observation_service import sample_observations, sensor_nodes
from .truth_service import generate_truth, reference_state, truth_theta
from .twin_service import run_twin_experiment, settings_for

__all__ = [
    "conservativity_residual",
    "gamma_summary",
    "mean_rmse",
    "relative_rmse",
    "rmse",
    "sample_observations",
    "sensor_nodes",
    "generate_truth",
    "reference_state",
    "truth_theta",
    "run_twin_experiment",
    "settings_for",
]
