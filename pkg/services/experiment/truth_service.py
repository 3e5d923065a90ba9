"""Truth service - reference run on the fine grid"""

import logging

import numpy as np

from models import StateField, TruthRecord, TwinExperiment
from services.model import SCHEME_EXPLICIT, advance, forcing_amplitude, forcing_for
from utils import NumericalBlowupError, timed_execution

logger = logging.getLogger("menkf_app")


def reference_state(model) -> StateField:
    """Uniform inlet reference state on the model grid."""
    return StateField.from_stacked(model.grid, model.variables, model.reference_values())


def truth_clock_offset(exp: TwinExperiment) -> float:
    """Truth forcing time at the start of the assimilation window."""
    return 0.0 if exp.reset_clock_after_spinup else exp.n_spinup_steps * exp.dt


def truth_theta(exp: TwinExperiment, t_truth) -> np.ndarray:
    """True forcing parameters at truth time(s) t_truth, shape (..., n_params)."""
    inlet = forcing_for(exp.fine_model, exp.truth_params, exp.amplitude_period_ratio)
    t_truth = np.asarray(t_truth, dtype=float)
    if inlet.is_truth_mode:
        return np.asarray(forcing_amplitude(inlet, t_truth), dtype=float)[..., None]
    return np.broadcast_to(inlet.theta, t_truth.shape + inlet.theta.shape).copy()


def _spin_up(model, values, theta, b, n_steps):
    for s in range(n_steps):
        values = advance(model, values, theta, s * model.dt, SCHEME_EXPLICIT, amplitude_period_ratio=b)
    return values


@timed_execution(logger, "truth generation")
def generate_truth(exp: TwinExperiment) -> TruthRecord:
    """Spin up, then run the DA window recording the observed variable at every observation step.

    Records use assimilation step indices: step s is DA time s * dt.
    """
    model = exp.fine_model
    theta = np.asarray(exp.truth_params, dtype=float)
    b = exp.amplitude_period_ratio
    observed = model.variables.index(exp.observed_variable)
    values = reference_state(model).stacked()

    logger.info(
        f"SERVICE: generating truth, {exp.n_spinup_steps} spin-up + {exp.n_steps} steps on {model.grid.n_nodes} nodes"
    )
    try:
        values = _spin_up(model, values, theta, b, exp.n_spinup_steps)
    except NumericalBlowupError as e:
        e.context["phase"] = "spinup"
        raise

    offset = truth_clock_offset(exp)
    snapshot_steps = {int(round(ts / exp.dt)): ts for ts in exp.snapshot_times}
    steps, fields, snapshots = [], [], {}
    if 0 in snapshot_steps:
        snapshots[snapshot_steps[0]] = StateField.from_stacked(model.grid, model.variables, values)

    t = offset
    for s in range(1, exp.n_steps + 1):
        try:
            values = advance(model, values, theta, t, SCHEME_EXPLICIT, amplitude_period_ratio=b)
        except NumericalBlowupError as e:
            e.context["phase"] = "truth"
            raise
        t = offset + s * exp.dt
        if s % exp.obs_every_n_steps == 0:
            steps.append(s)
            fields.append(values[observed].copy())
        if s in snapshot_steps:
            snapshots[snapshot_steps[s]] = StateField.from_stacked(model.grid, model.variables, values)

    steps = np.asarray(steps, dtype=np.int64)
    times = steps * exp.dt
    return TruthRecord(
        steps=steps,
        times=times,
        fields=np.asarray(fields).reshape(len(steps), model.grid.n_nodes),
        theta=truth_theta(exp, offset + times),
        snapshots=snapshots,
        variable=exp.observed_variable,
    )
