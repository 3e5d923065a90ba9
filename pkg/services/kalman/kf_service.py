"""Classical Kalman filter for small dense systems"""

from typing import Optional

import numpy as np

from models import DenseGaussianState, ObservationSet
from utils import ContractError

from .innovation import solve_innovation


def kf_step(
    state: DenseGaussianState,
    transition: np.ndarray,
    process_noise: np.ndarray,
    obs: Optional[ObservationSet] = None,
) -> DenseGaussianState:
    """Forecast with (M, Q), then analyse obs when given (H selects obs.state_indices)."""
    transition = np.atleast_2d(np.asarray(transition, dtype=float))
    process_noise = np.atleast_2d(np.asarray(process_noise, dtype=float))
    n = state.mean.shape[0]
    if transition.shape != (n, n) or process_noise.shape != (n, n):
        raise ContractError(
            f"transition {transition.shape} and process noise {process_noise.shape} must be ({n}, {n})"
        )

    mean = transition @ state.mean
    cov = transition @ state.covariance @ transition.T + process_noise
    if obs is None:
        return DenseGaussianState(mean=mean, covariance=0.5 * (cov + cov.T))

    idx = obs.state_indices
    if idx.size and idx.max() >= n:
        raise ContractError(f"observed index {int(idx.max())} outside a state of dimension {n}")
    innovation = cov[np.ix_(idx, idx)] + obs.noise_variance * np.eye(idx.size)
    # K^T = S^-1 H P
    gain = solve_innovation(innovation, cov[idx, :]).T
    mean = mean + gain @ (obs.values - mean[idx])
    cov = cov - gain @ cov[idx, :]
    return DenseGaussianState(mean=mean, covariance=0.5 * (cov + cov.T))
