"""Euler service - forward steps of the inviscid 1D Euler equations (ideal gas).

Conserved variables are stacked as (..., 3, n_nodes): rho, rho_u, rho_E.
Both ends use characteristic conditions linearized about the inlet reference
state: the inlet imposes the forced velocity and lets upstream-running
acoustic waves out, the outlet extrapolates its outgoing waves and admits
no incoming one.
"""

from typing import Optional

import numpy as np

from models import EulerModel, InletForcing, ModelOperator, StateField

from .checks import check_finite, check_grid, check_positive, check_relaxation, step_index
from .filter_service import sixth_order_filter
from .forcing_service import inlet_value
from .operator_service import jacobi_sweep, relax


def pressure(q: np.ndarray, gamma: float) -> np.ndarray:
    rho, momentum, energy = q[..., 0, :], q[..., 1, :], q[..., 2, :]
    return (gamma - 1.0) * (energy - 0.5 * momentum**2 / rho)


def fluxes(q: np.ndarray, gamma: float) -> np.ndarray:
    rho, momentum, energy = q[..., 0, :], q[..., 1, :], q[..., 2, :]
    u = momentum / rho
    p = (gamma - 1.0) * (energy - 0.5 * momentum * u)
    return np.stack([momentum, momentum * u + p, (energy + p) * u], axis=-2)


def flux_jacobian(q: np.ndarray, gamma: float) -> np.ndarray:
    """dF/dq per node, shape (..., n_nodes, 3, 3)."""
    rho = q[..., 0, :]
    u = q[..., 1, :] / rho
    total_energy = q[..., 2, :] / rho
    g1 = gamma - 1.0
    jac = np.zeros(u.shape + (3, 3))
    jac[..., 0, 1] = 1.0
    jac[..., 1, 0] = 0.5 * (gamma - 3.0) * u**2
    jac[..., 1, 1] = (3.0 - gamma) * u
    jac[..., 1, 2] = g1
    jac[..., 2, 0] = g1 * u**3 - gamma * u * total_energy
    jac[..., 2, 1] = gamma * total_energy - 1.5 * g1 * u**2
    jac[..., 2, 2] = gamma * u
    return jac


def primitives(q: np.ndarray, gamma: float):
    """(rho, u, p) per node from conserved variables of shape (..., 3, n_nodes)."""
    rho = q[..., 0, :]
    return rho, q[..., 1, :] / rho, pressure(q, gamma)


def conserved(rho, u, p, gamma: float) -> np.ndarray:
    """Conserved triple stacked on the last axis, shape (..., 3)."""
    rho, u, p = np.broadcast_arrays(rho, u, p)
    return np.stack([rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u**2], axis=-1)


def inlet_state(model: EulerModel, u_in, left_wave=0.0) -> np.ndarray:
    """Conserved inlet values (..., 3) for the forced velocity u_in.

    left_wave is the amplitude p' - rho0 a0 u' of the acoustic wave leaving
    through the inlet. The forced velocity launches its own downstream wave
    p' = rho0 a0 u' and the density follows the isentrope through (rho0, p0),
    so a zero forcing amplitude returns (rho0, rho0 u0, rho0 E0).
    """
    impedance = model.density * model.sound_speed
    u_in = np.asarray(u_in, dtype=float)
    p_in = model.pressure + impedance * (u_in - model.u0) + left_wave
    rho_in = model.density * (p_in / model.pressure) ** (1.0 / model.gamma)
    return conserved(rho_in, u_in, p_in, model.gamma)


def outlet_state(q: np.ndarray, model: EulerModel) -> np.ndarray:
    """Conserved outlet values (..., 3).

    Entropy and downstream acoustic amplitudes are extrapolated linearly from
    the last two interior nodes; the upstream acoustic amplitude is zero.
    """
    rho, u, p = primitives(q[..., -3:-1], model.gamma)
    sound_speed, impedance = model.sound_speed, model.density * model.sound_speed
    dp = p - model.pressure
    entropy_wave = (rho - model.density) - dp / sound_speed**2
    right_wave = dp + impedance * (u - model.u0)
    entropy_out = 2.0 * entropy_wave[..., 1] - entropy_wave[..., 0]
    dp_out = 0.5 * (2.0 * right_wave[..., 1] - right_wave[..., 0])
    return conserved(
        model.density + entropy_out + dp_out / sound_speed**2,
        model.u0 + dp_out / impedance,
        model.pressure + dp_out,
        model.gamma,
    )


def _apply_boundaries(q: np.ndarray, model: EulerModel, u_in):
    """Overwrite both end nodes in place from the updated interior."""
    rho, u, p = primitives(q[..., 1:2], model.gamma)
    left_wave = (p - model.pressure) - model.density * model.sound_speed * (u - model.u0)
    q[..., :, 0] = inlet_state(model, u_in, left_wave[..., 0])
    q[..., :, -1] = outlet_state(q, model)


def explicit_update(q: np.ndarray, model: EulerModel, u_in) -> np.ndarray:
    flux = fluxes(q, model.gamma)
    new = q.copy()
    new[..., 1:-1] = q[..., 1:-1] - model.dt / (2.0 * model.grid.spacing) * (
        flux[..., 2:] - flux[..., :-2]
    )
    new = sixth_order_filter(new, model.filter_strength)
    _apply_boundaries(new, model, u_in)
    return new


def assemble_operator(q: np.ndarray, model: EulerModel) -> ModelOperator:
    """Psi = I - dt L with the flux Jacobian frozen at the previous state."""
    jac = flux_jacobian(q, model.gamma)
    scale = model.dt / (2.0 * model.grid.spacing)
    lower = -scale * jac[..., :-2, :, :]
    upper = scale * jac[..., 2:, :, :]
    diag = np.broadcast_to(np.eye(3), lower.shape).copy()
    rhs = np.swapaxes(q, -1, -2)[..., 1:-1, :].copy()
    return ModelOperator(lower=lower, diag=diag, upper=upper, rhs=rhs)


def implicit_update(
    q: np.ndarray,
    model: EulerModel,
    u_in,
    relaxation: float = 1.0,
    guess: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Blockwise Jacobi sweep, then filter and boundaries, then relaxation toward guess."""
    guess = q if guess is None else guess
    operator = assemble_operator(q, model)
    start = guess.copy()
    _apply_boundaries(start, model, u_in)
    swept = start.copy()
    swept[..., 1:-1] = np.swapaxes(jacobi_sweep(operator, np.swapaxes(start, -1, -2)), -1, -2)
    swept = sixth_order_filter(swept, model.filter_strength)
    _apply_boundaries(swept, model, u_in)
    return relax(guess, swept, relaxation)


def impose_boundaries(q: np.ndarray, model: EulerModel, u_in) -> np.ndarray:
    """Copy of q with both end nodes set from its interior for inlet velocity u_in."""
    new = q.copy()
    _apply_boundaries(new, model, u_in)
    return new


def check_state(q: np.ndarray, model: EulerModel, names, step: int):
    check_finite(q, names, step)
    check_positive(q[..., 0, :], pressure(q, model.gamma), step)


def euler_step_explicit(
    state: StateField, model: EulerModel, inlet: InletForcing, t: float
) -> StateField:
    check_grid(state.grid, model.grid)
    values = explicit_update(state.stacked(), model, inlet_value(inlet, t + model.dt))
    check_state(values, model, state.names, step_index(t, model.dt))
    return state.with_stacked(values)


def euler_step_implicit_single(
    state: StateField,
    model: EulerModel,
    inlet: InletForcing,
    t: float,
    relaxation: float = 1.0,
    guess: Optional[StateField] = None,
) -> StateField:
    check_grid(state.grid, model.grid)
    check_relaxation(relaxation)
    values = implicit_update(
        state.stacked(),
        model,
        inlet_value(inlet, t + model.dt),
        relaxation,
        None if guess is None else guess.stacked(),
    )
    check_state(values, model, state.names, step_index(t, model.dt))
    return state.with_stacked(values)
