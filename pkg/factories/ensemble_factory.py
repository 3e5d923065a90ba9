"""Ensemble Factory - prior ensemble and initial MEnKF state"""

import logging

import numpy as np

from models import Ensemble, MenkfState, StateField, TwinExperiment
from utils import ContractError

logger = logging.getLogger("menkf_app")


class EnsembleFactory:
    """Factory for the assimilation starting point."""

    @staticmethod
    def create_prior_ensemble(exp: TwinExperiment, param_draws: np.ndarray) -> Ensemble:
        """Uniform coarse reference states; theta^(i) = prior_mean + param_draws[i].

        param_draws holds one zero-mean N(0, prior_variance) row per member.
        """
        param_draws = np.asarray(param_draws, dtype=float)
        expected = (exp.n_ensemble, len(exp.prior_mean))
        if param_draws.shape != expected:
            raise ContractError(
                f"prior draws have shape {param_draws.shape}, expected {expected}"
            )
        coarse = exp.coarse_model.reference_values().reshape(-1)
        members = np.repeat(coarse[None, :], exp.n_ensemble, axis=0)
        params = np.asarray(exp.prior_mean, dtype=float)[None, :] + param_draws
        logger.info(
            f"FACTORY: prior ensemble of {exp.n_ensemble} members, theta mean {params.mean(axis=0)}"
        )
        return Ensemble(members=members, params=params)

    @staticmethod
    def create_initial_state(exp: TwinExperiment, param_draws: np.ndarray) -> MenkfState:
        ensemble = EnsembleFactory.create_prior_ensemble(exp, param_draws)
        fine = StateField.from_stacked(
            exp.pair.fine, exp.variables, exp.fine_model.reference_values()
        )
        return MenkfState(
            fine_state=fine,
            ensemble=ensemble,
            theta_mean=ensemble.param_mean,
            pair=exp.pair,
        )
