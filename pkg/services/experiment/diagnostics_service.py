"""Diagnostics service - relative RMSE and the conservativity residual"""

from typing import Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from models import DiagnosticsSeries, StateField
from services.model import SCHEME_IMPLICIT, step_field
from utils import ContractError, second_difference_energy


def relative_rmse(estimate: np.ndarray, truth: np.ndarray, x: np.ndarray) -> float:
    norm = trapezoid(truth**2, x)
    if not norm > 0.0:
        raise ContractError("relative RMSE is undefined for a zero-norm truth")
    return float(np.sqrt(trapezoid((estimate - truth) ** 2, x) / norm))


def rmse(estimate: StateField, truth: StateField, variable: str) -> float:
    """sqrt(int (est - truth)^2 dx / int truth^2 dx), trapezoidal on the grid nodes."""
    if estimate.grid != truth.grid:
        raise ContractError("estimate and truth live on different grids")
    return relative_rmse(estimate[variable], truth[variable], estimate.grid.nodes)


def conservativity_residual(
    prev: StateField,
    curr: StateField,
    model,
    theta,
    t: float,
    scheme: str = SCHEME_IMPLICIT,
    amplitude_period_ratio: Optional[float] = None,
    variable: Optional[str] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Gamma and its normalized form Gamma* for the momentum variable.

    Gamma = (curr - prev)/dt - (M(prev) - prev)/dt on interior nodes, with M the
    model step of the given scheme from t; boundary nodes are 0.
    """
    if prev.grid != curr.grid:
        raise ContractError("consecutive states must share a grid")
    variable = variable or model.momentum_variable
    stepped = step_field(
        prev, model, theta, t, scheme, amplitude_period_ratio=amplitude_period_ratio
    )
    gamma = np.zeros(prev.grid.n_nodes)
    gamma[1:-1] = (curr[variable][1:-1] - stepped[variable][1:-1]) / model.dt
    rate = np.max(np.abs(curr[variable] - prev[variable])[1:-1]) / model.dt
    gamma_star = gamma / rate if rate > 0.0 else np.zeros_like(gamma)
    return gamma, gamma_star


def gamma_summary(gamma_star: np.ndarray) -> Tuple[float, float]:
    """(max |Gamma*|, high-frequency energy of Gamma*)."""
    return float(np.max(np.abs(gamma_star))), second_difference_energy(gamma_star)


def mean_rmse(series: DiagnosticsSeries, t_start: float, t_end: float) -> float:
    """Mean RMSE over analyses with t_start <= time <= t_end."""
    mask = (series.times >= t_start) & (series.times <= t_end)
    if not np.any(mask):
        raise ContractError(f"no analysis falls inside [{t_start}, {t_end}]")
    return float(np.mean(series.rmse[mask]))
