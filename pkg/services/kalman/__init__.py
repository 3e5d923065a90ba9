# Filter services: classical KF oracle, stochastic EnKF and Dual EnKF

from .dual_enkf_service import dual_enkf_cycle, inflation_draws
from .enkf_service import (
    build_anomalies,
    enkf_analysis,
    enkf_gain,
    innovation_matrix,
    normalized_anomalies,
    parameter_gain,
    perturb_observations,
)
from .innovation import solve_innovation
from .kf_service import kf_step

__all__ = [
    "dual_enkf_cycle",
    "inflation_draws",
    "build_anomalies",
    "enkf_analysis",
    "enkf_gain",
    "innovation_matrix",
    "normalized_anomalies",
    "parameter_gain",
    "perturb_observations",
    "solve_innovation",
    "kf_step",
]
