"""Multigrid EnKF service - fine forecast, coarse Dual EnKF, fine correction and smoothing"""

import logging

import numpy as np

from models import (
    AnalysisReport,
    MenkfSettings,
    MenkfState,
    ObservationSet,
    SeededStream,
    StateField,
)
from services.grid_service import project_to_coarse, prolong_values
from services.kalman import dual_enkf_cycle
from services.model import (
    SCHEME_EXPLICIT,
    SCHEME_IMPLICIT,
    advance_ensemble,
    impose_boundaries,
    step_field,
)
from utils import AnalysisError, ApplicationError, ContractError, second_difference_energy

logger = logging.getLogger("menkf_app")

STAGE_FINE_FORECAST = "fine_forecast"
STAGE_DUAL_ENKF = "dual_enkf"
STAGE_PROJECTION = "projection"
STAGE_CORRECTION = "correction"
STAGE_SMOOTHING = "smoothing"


def _abort(stage: str, cycle: int, error: Exception):
    context = dict(getattr(error, "context", {}) or {})
    context["cycle"] = cycle
    message = getattr(error, "message", str(error))
    logger.error(f"SERVICE: MEnKF analysis {cycle} failed in {stage}: {message}", exc_info=True)
    raise AnalysisError(f"{stage} failed in cycle {cycle}: {message}", stage=stage, context=context) from error


def menkf_forecast(state: MenkfState, settings: MenkfSettings, t: float) -> MenkfState:
    """Explicit step of the fine simulation (forced with theta_mean) and of every member."""
    fine = step_field(state.fine_state, settings.fine_model, state.theta_mean, t, SCHEME_EXPLICIT)
    members = advance_ensemble(
        settings.coarse_model,
        state.ensemble.members,
        state.ensemble.params,
        t,
        SCHEME_EXPLICIT,
        settings.n_jobs,
    )
    ensemble = state.ensemble.model_copy(update={"members": members})
    return state.model_copy(
        update={"fine_state": fine, "ensemble": ensemble, "time": t + settings.fine_model.dt}
    )


def menkf_analysis_report(
    state: MenkfState,
    obs: ObservationSet,
    stream: SeededStream,
    settings: MenkfSettings,
    t: float,
) -> AnalysisReport:
    """One MEnKF analysis over the step t -> t + dt, with its intermediate fine states.

    obs observes the coarse stacked state at t + dt. The input state is never
    modified, so it remains the pre-analysis state when a stage fails.
    """
    cycle = state.cycle_index
    pair = state.pair
    names = state.fine_state.names
    t_new = t + settings.fine_model.dt

    def with_boundaries(field: StateField) -> StateField:
        # Increments touch every node; the inlet law and outlet rule still hold afterwards
        return impose_boundaries(field, settings.fine_model, state.theta_mean, t_new)

    try:
        forecast = step_field(
            state.fine_state, settings.fine_model, state.theta_mean, t, SCHEME_IMPLICIT
        )
    except (ApplicationError, ValueError) as e:
        _abort(STAGE_FINE_FORECAST, cycle, e)

    def member_step(members, params):
        return advance_ensemble(
            settings.coarse_model, members, params, t, SCHEME_IMPLICIT, settings.n_jobs
        )

    try:
        dual = dual_enkf_cycle(
            state.ensemble, member_step, obs, settings.param_inflation, stream
        )
    except (ApplicationError, ValueError) as e:
        _abort(STAGE_DUAL_ENKF, cycle, e)

    corrected = None
    smoothing_ratio = None
    final = forecast
    if settings.enable_state_correction:
        try:
            projected = project_to_coarse(forecast, pair).to_vector()
        except (ApplicationError, ValueError) as e:
            _abort(STAGE_PROJECTION, cycle, e)

        try:
            # Unperturbed observation for the single fine trajectory
            increment = dual.state_gain @ (obs.values - obs.apply(projected))
            fine_increment = prolong_values(increment.reshape(len(names), -1), pair)
            corrected = with_boundaries(forecast.with_stacked(forecast.stacked() + fine_increment))
        except (ApplicationError, ValueError) as e:
            _abort(STAGE_CORRECTION, cycle, e)
        final = corrected

        # A zero increment leaves the model solution untouched, so there is nothing to smooth
        if settings.enable_smoothing and np.any(increment):
            try:
                final = step_field(
                    state.fine_state,
                    settings.fine_model,
                    state.theta_mean,
                    t,
                    SCHEME_IMPLICIT,
                    relaxation=settings.smoothing_relaxation,
                    guess=corrected,
                )
                final = with_boundaries(final)
            except (ApplicationError, ValueError) as e:
                _abort(STAGE_SMOOTHING, cycle, e)
            smoothing_ratio = regularization_metric(corrected, final)

    ensemble = dual.ensemble
    new_state = MenkfState(
        fine_state=final,
        ensemble=ensemble,
        theta_mean=ensemble.param_mean,
        pair=pair,
        cycle_index=cycle + 1,
        time=t_new,
    )
    logger.debug(
        f"SERVICE: MEnKF analysis {cycle} at t={new_state.time:.6g}: theta mean {new_state.theta_mean}"
    )
    return AnalysisReport(
        state=new_state,
        previous_fine=state.fine_state,
        forecast_fine=forecast,
        corrected_fine=corrected,
        smoothing_ratio=smoothing_ratio,
    )


def menkf_analysis(
    state: MenkfState,
    obs: ObservationSet,
    stream: SeededStream,
    settings: MenkfSettings,
    t: float,
) -> MenkfState:
    return menkf_analysis_report(state, obs, stream, settings, t).state


def regularization_metric(before: StateField, after: StateField) -> float:
    """High-frequency (second-difference) energy of after relative to before."""
    if before.grid != after.grid or before.names != after.names:
        raise ContractError("regularization metric needs fields on the same grid and variables")
    energy_before = second_difference_energy(before.stacked())
    energy_after = second_difference_energy(after.stacked())
    if energy_before == 0.0:
        return 1.0 if energy_after == 0.0 else float("inf")
    return energy_after / energy_before


def ram_ratio(r_c: int, n_e: int, dims: int) -> float:
    """Memory of MEnKF relative to one fine simulation: 1 + N_e / r_C^dims."""
    if r_c < 1 or n_e < 1 or dims not in (1, 2, 3):
        raise ContractError(
            f"ram_ratio needs r_C >= 1, N_e >= 1 and dims in 1..3, got ({r_c}, {n_e}, {dims})"
        )
    return 1.0 + n_e / r_c**dims
