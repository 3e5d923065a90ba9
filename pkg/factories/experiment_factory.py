"""Experiment Factory - twin experiment from a validated configuration"""

import logging
from typing import Optional

from pydantic import ValidationError

from models import TwinExperiment
from schemas import AssimilationConfig, EulerSection
from utils import ConfigurationError

from .grid_factory import GridFactory
from .model_factory import ModelFactory, configuration_error

logger = logging.getLogger("menkf_app")


class ExperimentFactory:
    """Factory for TwinExperiment objects with cross-section rules applied."""

    @staticmethod
    def create_from_config(
        config: AssimilationConfig, n_jobs: Optional[int] = None
    ) -> TwinExperiment:
        """Build every domain object of a run; raises ConfigurationError with a key path."""
        pair = GridFactory.create_pair(config.grid)
        fine_model, coarse_model = ModelFactory.create_models(config.model, pair)

        ExperimentFactory._check_param_lengths(config)
        obs_every = ExperimentFactory._obs_every_n_steps(config)
        # R is given in the physical units of the observed variable; the solver works in reference units
        scale = fine_model.observation_scale
        obs_noise = config.filter.obs_noise_variance * scale**2

        try:
            experiment = TwinExperiment(
                fine_model=fine_model,
                coarse_model=coarse_model,
                pair=pair,
                truth_params=config.experiment.truth_params,
                amplitude_period_ratio=config.experiment.amplitude_period_ratio,
                prior_mean=config.filter.param_prior_mean,
                prior_variance=config.filter.param_prior_variance,
                param_inflation=config.filter.param_inflation,
                n_ensemble=config.filter.n_ensemble,
                obs_noise_variance=obs_noise,
                obs_every_n_steps=obs_every,
                obs_window=config.experiment.obs_window,
                spinup_time=config.experiment.spinup_time,
                reset_clock_after_spinup=config.experiment.reset_clock_after_spinup,
                da_window=config.experiment.da_window,
                snapshot_times=config.experiment.snapshot_times,
                seed=config.seed,
                smoothing_relaxation=config.menkf.smoothing_relaxation,
                enable_state_correction=config.menkf.enable_state_correction,
                enable_smoothing=config.menkf.enable_smoothing,
                n_jobs=n_jobs or config.menkf.n_jobs or 1,
            )
        except ValidationError as e:
            raise configuration_error(e, "experiment") from e

        logger.info(
            f"FACTORY: twin experiment with N_e={experiment.n_ensemble}, "
            f"{experiment.n_steps} steps, analysis every {obs_every} steps"
        )
        return experiment

    @staticmethod
    def _obs_every_n_steps(config: AssimilationConfig) -> int:
        if config.filter.obs_every_n_steps is not None:
            return config.filter.obs_every_n_steps
        steps = int(round(1.0 / (config.filter.analysis_frequency * config.model.dt)))
        if steps < 1:
            raise ConfigurationError(
                f"analysis frequency {config.filter.analysis_frequency} exceeds one analysis per step",
                key="filter.analysis_frequency",
            )
        return steps

    @staticmethod
    def _check_param_lengths(config: AssimilationConfig):
        expected = ModelFactory.n_params(config.model.kind)
        for section, name in (
            ("filter", "param_prior_mean"),
            ("filter", "param_prior_variance"),
            ("filter", "param_inflation"),
        ):
            values = getattr(config.filter, name)
            if len(values) != expected:
                raise ConfigurationError(
                    f"{config.model.kind} forcing has {expected} parameter(s), {name} has {len(values)}",
                    key=f"{section}.{name}",
                )

        # Euler truth is either a fixed amplitude or theta0 with a modulation ratio b
        if len(config.experiment.truth_params) != expected:
            raise ConfigurationError(
                f"{config.model.kind} truth needs {expected} parameter(s), got {len(config.experiment.truth_params)}",
                key="experiment.truth_params",
            )
        if config.experiment.amplitude_period_ratio is not None and not isinstance(
            config.model, EulerSection
        ):
            raise ConfigurationError(
                "amplitude_period_ratio only applies to the euler model",
                key="experiment.amplitude_period_ratio",
            )
