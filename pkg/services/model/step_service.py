"""Step service - model-agnostic dispatch of forward steps for single states and ensembles"""

import logging
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from models import BurgersModel, EulerModel, ForcingKind, InletForcing, StateField
from utils import ContractError, NumericalBlowupError

from . import burgers_service, euler_service
from .checks import check_finite, check_relaxation, step_index
from .forcing_service import inlet_value

logger = logging.getLogger("menkf_app")

SCHEME_EXPLICIT = "explicit"
SCHEME_IMPLICIT = "implicit"
SCHEMES = (SCHEME_EXPLICIT, SCHEME_IMPLICIT)

# Below this many members per worker the pool overhead dominates
MIN_MEMBERS_PER_JOB = 8


def forcing_for(model, theta, amplitude_period_ratio: Optional[float] = None) -> InletForcing:
    if isinstance(model, BurgersModel):
        kind = ForcingKind.BURGERS_PHASE_AMPLITUDE
    else:
        kind = ForcingKind.EULER_MODULATED_AMPLITUDE
    return InletForcing(
        kind=kind,
        theta=theta,
        omega=model.omega,
        u0=model.u0,
        amplitude_period_ratio=amplitude_period_ratio,
    )


def _kernels(model):
    if isinstance(model, BurgersModel):
        return burgers_service
    if isinstance(model, EulerModel):
        return euler_service
    raise ContractError(f"unsupported model type {type(model).__name__}")


def advance(
    model,
    values: np.ndarray,
    theta,
    t: float,
    scheme: str = SCHEME_EXPLICIT,
    relaxation: float = 1.0,
    guess: Optional[np.ndarray] = None,
    amplitude_period_ratio: Optional[float] = None,
) -> np.ndarray:
    """Advance stacked values (..., n_variables, n_nodes) from t to t + dt.

    theta is (n_params,) or (..., n_params) with one row per leading index.
    """
    if scheme not in SCHEMES:
        raise ContractError(f"unknown time scheme '{scheme}'", context={"scheme": scheme})
    kernels = _kernels(model)
    inlet = forcing_for(model, theta, amplitude_period_ratio)
    u_in = inlet_value(inlet, t + model.dt)
    if scheme == SCHEME_EXPLICIT:
        new = kernels.explicit_update(values, model, u_in)
    else:
        check_relaxation(relaxation)
        new = kernels.implicit_update(values, model, u_in, relaxation, guess)

    step = step_index(t, model.dt)
    if isinstance(model, EulerModel):
        euler_service.check_state(new, model, model.variables, step)
    else:
        check_finite(new, model.variables, step)
    return new


def step_field(
    state: StateField,
    model,
    theta,
    t: float,
    scheme: str = SCHEME_EXPLICIT,
    relaxation: float = 1.0,
    guess: Optional[StateField] = None,
    amplitude_period_ratio: Optional[float] = None,
) -> StateField:
    """One forward step of a single StateField."""
    if state.grid != model.grid:
        raise ContractError("state does not live on the model grid")
    values = advance(
        model,
        state.stacked(),
        np.asarray(theta, dtype=float),
        t,
        scheme,
        relaxation,
        None if guess is None else guess.stacked(),
        amplitude_period_ratio,
    )
    return state.with_stacked(values)


def impose_boundaries(
    state: StateField, model, theta, t: float, amplitude_period_ratio: Optional[float] = None
) -> StateField:
    """Re-impose the boundary conditions at time t on a field changed outside the model."""
    if state.grid != model.grid:
        raise ContractError("state does not live on the model grid")
    inlet = forcing_for(model, np.asarray(theta, dtype=float), amplitude_period_ratio)
    values = _kernels(model).impose_boundaries(state.stacked(), model, inlet_value(inlet, t))
    return state.with_stacked(values)


def _advance_chunk(offset: int, model, values, params, t, scheme):
    try:
        return advance(model, values, params, t, scheme)
    except NumericalBlowupError as e:
        if "member" in e.context:
            e.context["member"] += offset
        raise


def advance_ensemble(
    model,
    members: np.ndarray,
    params: np.ndarray,
    t: float,
    scheme: str = SCHEME_EXPLICIT,
    n_jobs: int = 1,
) -> np.ndarray:
    """Advance row-wise ensemble members (N_e, m), each with its own parameter row.

    Members are independent, so the result does not depend on how they are
    split across workers.
    """
    n_members = members.shape[0]
    n_vars = len(model.variables)
    values = members.reshape(n_members, n_vars, model.grid.n_nodes)
    n_chunks = min(max(int(n_jobs), 1), max(n_members // MIN_MEMBERS_PER_JOB, 1))
    if n_chunks == 1:
        new = _advance_chunk(0, model, values, params, t, scheme)
    else:
        bounds = np.linspace(0, n_members, n_chunks + 1).astype(int)
        parts = Parallel(n_jobs=n_chunks)(
            delayed(_advance_chunk)(lo, model, values[lo:hi], params[lo:hi], t, scheme)
            for lo, hi in zip(bounds[:-1], bounds[1:])
        )
        new = np.concatenate(parts, axis=0)
    return new.reshape(n_members, -1)
