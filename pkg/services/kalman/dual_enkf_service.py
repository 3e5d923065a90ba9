"""Dual EnKF: parameter update from a first forecast, state update from a re-forecast"""

import logging
from typing import Callable

import numpy as np

from models import DualCycleResult, Ensemble, ObservationSet, SeededStream
from services.stochastics_service import (
    ANALYSIS_OBS_PERTURBATION,
    ANALYSIS_PARAM_INFLATION,
    member_draws,
)
from utils import ContractError, NumericalBlowupError, timed_execution

from .enkf_service import build_anomalies, enkf_gain, parameter_gain, perturb_observations

logger = logging.getLogger("menkf_app")

# (members (N_e, m), params (N_e, N_theta)) -> forecast members (N_e, m)
ModelStep = Callable[[np.ndarray, np.ndarray], np.ndarray]


def inflation_draws(stream: SeededStream, n_members: int, param_inflation) -> np.ndarray:
    """tau ~ N(0, Sigma_theta) per member; Sigma_theta is a vector of variances or a full matrix."""
    sigma = np.asarray(param_inflation, dtype=float)
    if sigma.ndim < 2:
        return member_draws(stream, n_members, np.atleast_1d(sigma), np.atleast_1d(sigma).size)
    if not np.any(sigma):
        return np.zeros((n_members, sigma.shape[0]))
    try:
        factor = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError as e:
        raise ContractError("parameter inflation covariance is not positive definite") from e
    unit = member_draws(stream, n_members, 1.0, sigma.shape[0])
    return unit @ factor.T


def _forecast(model_step: ModelStep, members, params, label: str) -> np.ndarray:
    try:
        return model_step(members, params)
    except NumericalBlowupError as e:
        member = e.context.get("member")
        logger.error(f"SERVICE: {label} forecast failed for member {member}: {e.message}")
        raise


@timed_execution(logger, "dual EnKF cycle")
def dual_enkf_cycle(
    ens: Ensemble,
    model_step: ModelStep,
    obs: ObservationSet,
    param_inflation,
    stream: SeededStream,
) -> DualCycleResult:
    """One Dual EnKF cycle starting from the previous analysis ensemble.

    The stream is the cycle's analysis stream; observation perturbations and
    parameter inflation use its two child lineages, one grandchild per member.
    """
    n_members = ens.n_members
    perturbed, draws = perturb_observations(
        obs, n_members, stream.child(ANALYSIS_OBS_PERTURBATION)
    )
    tau = inflation_draws(stream.child(ANALYSIS_PARAM_INFLATION), n_members, param_inflation)
    if tau.shape != ens.params.shape:
        raise ContractError(
            f"parameter inflation has {tau.shape[1]} entries for {ens.n_params} parameters"
        )

    # Parameter forecast and update
    params_forecast = ens.params + tau
    first = _forecast(model_step, ens.members, params_forecast, "parameter")
    predicted = obs.apply(first).T
    anoms = build_anomalies(
        Ensemble(members=first, params=params_forecast), obs, predicted, draws
    )
    param_gain = parameter_gain(anoms)
    params_analysis = params_forecast + (param_gain @ (perturbed - predicted)).T

    # Re-forecast from the previous analysis with updated parameters, then state update
    second = _forecast(model_step, ens.members, params_analysis, "state")
    predicted = obs.apply(second).T
    anoms = build_anomalies(
        Ensemble(members=second, params=params_analysis), obs, predicted, draws
    )
    state_gain = enkf_gain(anoms)
    members_analysis = second + (state_gain @ (perturbed - predicted)).T

    logger.debug(
        f"SERVICE: dual EnKF cycle at step {obs.step}: theta mean {params_analysis.mean(axis=0)}"
    )
    return DualCycleResult(
        ensemble=Ensemble(members=members_analysis, params=params_analysis),
        state_gain=state_gain,
        param_gain=param_gain,
        predicted_obs=predicted,
    )
