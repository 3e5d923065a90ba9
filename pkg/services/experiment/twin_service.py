"""Twin experiment service - truth, observations, MEnKF loop and diagnostics"""

import logging
import time

import numpy as np

from factories import EnsembleFactory
from models import (
    DiagnosticsSeries,
    ExperimentResult,
    MenkfSettings,
    Snapshot,
    TwinExperiment,
)
from services.menkf_service import menkf_analysis_report, menkf_forecast
from services.model import SCHEME_IMPLICIT
from services.stochastics_service import (
    PURPOSE_ANALYSIS,
    PURPOSE_OBSERVATION_SYNTHESIS,
    PURPOSE_PRIOR,
    derive_stream,
    member_draws,
)
from utils import ApplicationError, log_run_summary, timed_execution

from .diagnostics_service import conservativity_residual, gamma_summary, relative_rmse
from .observation_service import sample_observations
from .truth_service import generate_truth

logger = logging.getLogger("menkf_app")

# Progress is reported at INFO this many times per run
PROGRESS_REPORTS = 10


def settings_for(exp: TwinExperiment) -> MenkfSettings:
    return MenkfSettings(
        fine_model=exp.fine_model,
        coarse_model=exp.coarse_model,
        param_inflation=exp.param_inflation,
        smoothing_relaxation=exp.smoothing_relaxation,
        enable_state_correction=exp.enable_state_correction,
        enable_smoothing=exp.enable_smoothing,
        n_jobs=max(exp.n_jobs, 1),
    )


@timed_execution(logger, "twin experiment")
def run_twin_experiment(exp: TwinExperiment) -> ExperimentResult:
    """Truth run, observation synthesis and the MEnKF loop over the DA window.

    The loop only sees the truth through the sampled ObservationSets; truth
    fields are read afterwards for the diagnostics of each analysis.
    """
    start_time = time.time()
    truth = generate_truth(exp)
    observed = exp.variables.index(exp.observed_variable)
    observations = sample_observations(
        truth,
        exp.pair,
        exp.obs_window,
        exp.obs_noise_variance,
        derive_stream(exp.seed, (PURPOSE_OBSERVATION_SYNTHESIS,)),
        variable_offset=observed,
    )
    obs_by_step = {obs.step: obs for obs in observations}

    settings = settings_for(exp)
    # Member i draws from lineage (PURPOSE_PRIOR,) child i, independent of N_e
    prior_draws = member_draws(
        derive_stream(exp.seed, (PURPOSE_PRIOR,)), exp.n_ensemble, exp.prior_variance, len(exp.prior_mean)
    )
    state = EnsembleFactory.create_initial_state(exp, prior_draws)
    analysis_stream = derive_stream(exp.seed, (PURPOSE_ANALYSIS,))
    snapshot_steps = {int(round(ts / exp.dt)): ts for ts in exp.snapshot_times}
    x = exp.pair.fine.nodes
    model = exp.fine_model

    rows = {key: [] for key in DiagnosticsSeries.model_fields}
    snapshots = []
    if 0 in snapshot_steps and snapshot_steps[0] in truth.snapshots:
        snapshots.append(
            Snapshot(
                time=snapshot_steps[0],
                estimate=state.fine_state,
                truth=truth.snapshots[snapshot_steps[0]],
            )
        )

    report_every = max(exp.n_steps // PROGRESS_REPORTS, 1)
    logger.info(
        f"SERVICE: assimilating {len(observations)} observation sets over {exp.n_steps} steps"
    )
    for s in range(exp.n_steps):
        t = s * exp.dt
        obs = obs_by_step.get(s + 1)
        try:
            if obs is None:
                state = menkf_forecast(state, settings, t)
            else:
                cycle = state.cycle_index
                forcing_theta = state.theta_mean
                report = menkf_analysis_report(
                    state, obs, analysis_stream.child(cycle), settings, t
                )
                state = report.state
                _, gamma_star = conservativity_residual(
                    report.previous_fine, state.fine_state, model, forcing_theta, t, SCHEME_IMPLICIT
                )
                gamma_max, gamma_hf = gamma_summary(gamma_star)
                rows["times"].append(obs.time)
                rows["theta_mean"].append(state.theta_mean)
                rows["theta_std"].append(state.ensemble.param_std)
                rows["theta_truth"].append(truth.theta[cycle])
                rows["rmse"].append(
                    relative_rmse(state.fine_state[truth.variable], truth.field_at_step(obs.step), x)
                )
                rows["gamma_max"].append(gamma_max)
                rows["gamma_hf"].append(gamma_hf)
                rows["smoothing_ratio"].append(
                    np.nan if report.smoothing_ratio is None else report.smoothing_ratio
                )
                logger.debug(
                    f"SERVICE: analysis {cycle} t={obs.time:.4f} rmse={rows['rmse'][-1]:.4e} "
                    f"max|Gamma*|={gamma_max:.3e}"
                )
        except ApplicationError as e:
            e.context.setdefault("cycle", state.cycle_index)
            e.context.setdefault("step", s)
            log_run_summary(logger, "twin experiment", "failed", start_time)
            raise

        if (s + 1) in snapshot_steps:
            ts = snapshot_steps[s + 1]
            snapshots.append(Snapshot(time=ts, estimate=state.fine_state, truth=truth.snapshots[ts]))
        if (s + 1) % report_every == 0:
            logger.info(
                f"SERVICE: step {s + 1}/{exp.n_steps}, {state.cycle_index} analyses, theta mean {state.theta_mean}"
            )

    n_params = len(exp.prior_mean)
    diagnostics = DiagnosticsSeries(
        times=np.asarray(rows["times"], dtype=float),
        theta_mean=np.asarray(rows["theta_mean"], dtype=float).reshape(-1, n_params),
        theta_std=np.asarray(rows["theta_std"], dtype=float).reshape(-1, n_params),
        theta_truth=np.asarray(rows["theta_truth"], dtype=float).reshape(-1, truth.theta.shape[1]),
        rmse=np.asarray(rows["rmse"], dtype=float),
        gamma_max=np.asarray(rows["gamma_max"], dtype=float),
        gamma_hf=np.asarray(rows["gamma_hf"], dtype=float),
        smoothing_ratio=np.asarray(rows["smoothing_ratio"], dtype=float),
    )
    log_run_summary(logger, "twin experiment", "ok", start_time)
    return ExperimentResult(
        diagnostics=diagnostics,
        final_fine=state.fine_state,
        final_theta_mean=state.theta_mean,
        snapshots=snapshots,
    )
