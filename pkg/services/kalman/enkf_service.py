"""Stochastic ensemble Kalman filter: anomalies, perturbed observations, gain and analysis"""

import logging
import math
from typing import Tuple

import numpy as np

from models import AnomalySet, Ensemble, ObservationSet, SeededStream
from services.stochastics_service import member_draws
from utils import ContractError

from .innovation import solve_innovation

logger = logging.getLogger("menkf_app")


def normalized_anomalies(columns: np.ndarray) -> np.ndarray:
    """Mean-removed columns scaled by 1/sqrt(N_e - 1); columns are members."""
    n_members = columns.shape[1]
    if n_members < 2:
        raise ContractError(
            f"anomalies need at least 2 members, got {n_members}",
            context={"n_members": n_members},
        )
    return (columns - columns.mean(axis=1, keepdims=True)) / math.sqrt(n_members - 1)


def build_anomalies(
    ens: Ensemble,
    obs: ObservationSet,
    predicted_obs: np.ndarray,
    obs_noise_draws: np.ndarray,
) -> AnomalySet:
    """X, Y, Theta and E_o from row-wise members and column-wise (N_y x N_e) observation arrays."""
    predicted_obs = np.atleast_2d(np.asarray(predicted_obs, dtype=float))
    obs_noise_draws = np.atleast_2d(np.asarray(obs_noise_draws, dtype=float))
    expected = (obs.n_obs, ens.n_members)
    if predicted_obs.shape != expected or obs_noise_draws.shape != expected:
        raise ContractError(
            f"observation arrays must be {expected}, got {predicted_obs.shape} and {obs_noise_draws.shape}"
        )
    return AnomalySet(
        X=normalized_anomalies(ens.members.T),
        Y=normalized_anomalies(predicted_obs),
        Theta=normalized_anomalies(ens.params.T),
        E_o=normalized_anomalies(obs_noise_draws),
    )


def perturb_observations(
    obs: ObservationSet, n: int, stream: SeededStream
) -> Tuple[np.ndarray, np.ndarray]:
    """Returns (perturbed values, raw draws), both N_y x N_e; member i uses stream.child(i)."""
    draws = member_draws(stream, n, obs.noise_variance, obs.n_obs).T
    return obs.values[:, None] + draws, draws


def innovation_matrix(anoms: AnomalySet) -> np.ndarray:
    return anoms.Y @ anoms.Y.T + anoms.E_o @ anoms.E_o.T


def ensemble_gain(anomaly: np.ndarray, anoms: AnomalySet) -> np.ndarray:
    """anomaly Y^T (YY^T + E_oE_o^T)^-1 for any anomaly matrix (X or Theta)."""
    return solve_innovation(innovation_matrix(anoms), anoms.Y @ anomaly.T).T


def enkf_gain(anoms: AnomalySet) -> np.ndarray:
    """State gain K^e = X Y^T (Y Y^T + E_o E_o^T)^-1, shape m x N_y."""
    return ensemble_gain(anoms.X, anoms)


def parameter_gain(anoms: AnomalySet) -> np.ndarray:
    """Parameter gain K^theta = Theta Y^T (Y Y^T + E_o E_o^T)^-1, shape N_theta x N_y."""
    return ensemble_gain(anoms.Theta, anoms)


def enkf_analysis(
    ens: Ensemble,
    obs: ObservationSet,
    predicted_obs: np.ndarray,
    stream: SeededStream,
) -> Ensemble:
    """Stochastic EnKF update of every member; parameters are left untouched."""
    perturbed, draws = perturb_observations(obs, ens.n_members, stream)
    predicted_obs = np.atleast_2d(np.asarray(predicted_obs, dtype=float))
    anoms = build_anomalies(ens, obs, predicted_obs, draws)
    gain = enkf_gain(anoms)
    members = ens.members + (gain @ (perturbed - predicted_obs)).T
    return Ensemble(members=members, params=ens.params.copy())
