"""Burgers service - forward steps of the viscous 1D Burgers equation.

Kernels work on arrays of shape (..., 1, n_nodes) so that a whole ensemble
can be advanced in one call; a leading axis is the member index.
"""

from typing import Optional

import numpy as np

from models import BurgersModel, InletForcing, ModelOperator, StateField

from .checks import check_finite, check_grid, check_relaxation, step_index
from .forcing_service import inlet_value
from .operator_service import jacobi_sweep, relax


def _apply_boundaries(u: np.ndarray, u_in):
    u[..., 0] = u_in
    u[..., -1] = 2.0 * u[..., -2] - u[..., -3]


def explicit_update(values: np.ndarray, model: BurgersModel, u_in) -> np.ndarray:
    """Forward Euler with centered advection and diffusion; inlet u_in imposed."""
    u = values[..., 0, :]
    h, dt, nu = model.grid.spacing, model.dt, model.viscosity
    center, east, west = u[..., 1:-1], u[..., 2:], u[..., :-2]
    advection = center * (east - west) / (2.0 * h)
    diffusion = nu * (east - 2.0 * center + west) / h**2
    new = u.copy()
    new[..., 1:-1] = center + dt * (diffusion - advection)
    _apply_boundaries(new, u_in)
    return new[..., None, :]


def assemble_operator(values: np.ndarray, model: BurgersModel) -> ModelOperator:
    """Psi = I - dt L with the advection speed frozen at the previous state."""
    u = values[..., 0, :]
    speed = u[..., 1:-1]
    advective = model.dt / (2.0 * model.grid.spacing) * speed
    diffusive = model.viscosity * model.dt / model.grid.spacing**2
    return ModelOperator(
        lower=(-advective - diffusive)[..., None, None],
        diag=np.full_like(speed, 1.0 + 2.0 * diffusive)[..., None, None],
        upper=(advective - diffusive)[..., None, None],
        rhs=speed[..., None].copy(),
    )


def implicit_update(
    values: np.ndarray,
    model: BurgersModel,
    u_in,
    relaxation: float = 1.0,
    guess: Optional[np.ndarray] = None,
) -> np.ndarray:
    """One Jacobi sweep of Psi x = u_prev from guess, then relaxed toward guess."""
    guess = values if guess is None else guess
    operator = assemble_operator(values, model)
    start = guess[..., 0, :].copy()
    start[..., 0] = u_in
    swept = start.copy()
    swept[..., 1:-1] = jacobi_sweep(operator, start[..., None])[..., 0]
    _apply_boundaries(swept, u_in)
    return relax(guess[..., 0, :], swept, relaxation)[..., None, :]


def burgers_step_explicit(
    state: StateField, model: BurgersModel, inlet: InletForcing, t: float
) -> StateField:
    check_grid(state.grid, model.grid)
    values = explicit_update(state.stacked(), model, inlet_value(inlet, t + model.dt))
    check_finite(values, state.names, step_index(t, model.dt))
    return state.with_stacked(values)


def burgers_step_implicit_single(
    state: StateField,
    model: BurgersModel,
    inlet: InletForcing,
    t: float,
    relaxation: float = 1.0,
    guess: Optional[StateField] = None,
) -> StateField:
    """Single-iteration implicit step; guess defaults to the current state."""
    check_grid(state.grid, model.grid)
    check_relaxation(relaxation)
    values = implicit_update(
        state.stacked(),
        model,
        inlet_value(inlet, t + model.dt),
        relaxation,
        None if guess is None else guess.stacked(),
    )
    check_finite(values, state.names, step_index(t, model.dt))
    return state.with_stacked(values)


def impose_boundaries(values: np.ndarray, model: BurgersModel, u_in) -> np.ndarray:
    """Copy of values with the inlet and outlet rows set for inlet velocity u_in."""
    new = values.copy()
    _apply_boundaries(new[..., 0, :], u_in)
    return new
