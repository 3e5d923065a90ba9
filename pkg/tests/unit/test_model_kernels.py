import math
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from factories import ExperimentFactory
from models import BurgersModel, EulerModel, Grid1D, ModelOperator, StateField
from services.config_service import parse_config
from services.model import (
    advance,
    burgers_step_explicit,
    burgers_step_implicit_single,
    euler_step_explicit,
    euler_step_implicit_single,
    forcing_amplitude,
    forcing_for,
    inlet_value,
    jacobi_sweep,
    operator_residual,
    relax,
    sixth_order_filter,
)
from services.model.checks import check_positive
from services.model.euler_service import (
    conserved,
    flux_jacobian,
    fluxes,
    inlet_state,
    outlet_state,
    pressure,
    primitives,
)
from services.model.filter_service import BOUNDARY_STENCILS, FILTER_STENCIL
from utils import ContractError, NumericalBlowupError, PositivityLossError

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"


# --- forcing ---


def test_burgers_inlet_value(burgers_model):
    inlet = forcing_for(burgers_model, [0.2, 0.0])
    assert inlet_value(inlet, 0.25) == pytest.approx(1.2)
    assert inlet_value(inlet, 0.5) == pytest.approx(1.0)


def test_burgers_inlet_phase(burgers_model):
    inlet = forcing_for(burgers_model, [0.2, math.pi / 2])
    assert inlet_value(inlet, 0.0) == pytest.approx(1.2)


def test_batched_theta_gives_one_inlet_per_member(burgers_model):
    inlet = forcing_for(burgers_model, [[0.2, 0.0], [0.1, 0.0]])
    assert_allclose(inlet_value(inlet, 0.25), [1.2, 1.1])


def test_euler_truth_amplitude_modulation(euler_model):
    inlet = forcing_for(euler_model, [0.015], amplitude_period_ratio=10.0)
    assert forcing_amplitude(inlet, 2.5) == pytest.approx(0.03)
    assert forcing_amplitude(inlet, 7.5) == pytest.approx(0.0, abs=1e-15)
    plain = forcing_for(euler_model, [0.015])
    assert forcing_amplitude(plain, 2.5) == pytest.approx(0.015)


def test_forcing_rejects_wrong_parameter_count(burgers_model):
    with pytest.raises(ValueError):
        forcing_for(burgers_model, [0.2])


# --- filter ---


def test_filter_keeps_low_degree_polynomials():
    x = np.linspace(0.0, 1.0, 21)
    values = 1.0 - 3.0 * x + x**3 - 0.5 * x**5
    assert_allclose(sixth_order_filter(values, 1.0)[3:-3], values[3:-3], atol=1e-12)
    line = 2.0 - 0.5 * x
    assert_allclose(sixth_order_filter(line, 1.0), line, atol=1e-14)


def test_filter_removes_odd_even_mode():
    values = (-1.0) ** np.arange(15)
    filtered = sixth_order_filter(values, 1.0)
    assert_allclose(filtered[1:-1], 0.0, atol=1e-14)
    assert filtered[0] == values[0]
    assert filtered[-1] == values[-1]


def test_filter_stencils_sum_to_zero():
    assert FILTER_STENCIL.sum() == pytest.approx(0.0, abs=1e-15)
    for stencil in BOUNDARY_STENCILS.values():
        assert stencil.sum() == pytest.approx(0.0, abs=1e-15)


def test_filter_strength_zero_is_identity(rng):
    values = rng.standard_normal((2, 12))
    assert_array_equal(sixth_order_filter(values, 0.0), values)


def test_filter_contract():
    with pytest.raises(ContractError):
        sixth_order_filter(np.ones(6), 1.0)
    with pytest.raises(ContractError):
        sixth_order_filter(np.ones(10), 1.5)


# --- operator ---


def test_jacobi_sweep_keeps_exact_solution(rng):
    n = 12
    solution = rng.standard_normal((n, 1))
    lower = -0.2 * np.ones((n - 2, 1, 1))
    upper = -0.3 * np.ones((n - 2, 1, 1))
    diag = 2.0 * np.ones((n - 2, 1, 1))
    rhs = (
        lower[..., 0] * solution[:-2] + diag[..., 0] * solution[1:-1] + upper[..., 0] * solution[2:]
    )
    operator = ModelOperator(lower=lower, diag=diag, upper=upper, rhs=rhs)
    assert_allclose(jacobi_sweep(operator, solution), solution[1:-1], atol=1e-14)
    assert_allclose(operator_residual(operator, solution), 0.0, atol=1e-14)


def test_relax():
    base, update = np.zeros(3), np.ones(3)
    assert relax(base, update, 1.0) is update
    assert_allclose(relax(base, update, 0.5), 0.5)


# --- burgers ---


def test_burgers_uniform_state_is_steady(burgers_model, burgers_state):
    inlet = forcing_for(burgers_model, [0.0, 0.0])
    explicit = burgers_step_explicit(burgers_state, burgers_model, inlet, 0.0)
    implicit = burgers_step_implicit_single(burgers_state, burgers_model, inlet, 0.0)
    assert_allclose(explicit["u"], 1.0, atol=1e-14)
    assert_allclose(implicit["u"], 1.0, atol=1e-14)


def test_burgers_inlet_imposed_at_new_time(burgers_model, burgers_state):
    inlet = forcing_for(burgers_model, [0.2, 0.0])
    t = 0.1
    expected = inlet_value(inlet, t + burgers_model.dt)
    assert burgers_step_explicit(burgers_state, burgers_model, inlet, t)["u"][0] == pytest.approx(expected)
    assert burgers_step_implicit_single(burgers_state, burgers_model, inlet, t)["u"][0] == pytest.approx(expected)


def test_burgers_relaxed_step_blends_guess(burgers_model, burgers_state, rng):
    inlet = forcing_for(burgers_model, [0.1, 0.0])
    guess = burgers_state.with_stacked(1.0 + 0.01 * rng.standard_normal((1, burgers_model.grid.n_nodes)))
    full = burgers_step_implicit_single(burgers_state, burgers_model, inlet, 0.0, 1.0, guess)
    half = burgers_step_implicit_single(burgers_state, burgers_model, inlet, 0.0, 0.5, guess)
    assert_allclose(half["u"], 0.5 * guess["u"] + 0.5 * full["u"], atol=1e-14)


def test_burgers_rejects_bad_relaxation(burgers_model, burgers_state):
    inlet = forcing_for(burgers_model, [0.0, 0.0])
    for relaxation in (0.0, 1.5):
        with pytest.raises(ContractError):
            burgers_step_implicit_single(burgers_state, burgers_model, inlet, 0.0, relaxation)


def test_burgers_blowup_is_attributed(burgers_model, burgers_state):
    values = burgers_state.stacked()
    values[0, 10] = np.nan
    inlet = forcing_for(burgers_model, [0.0, 0.0])
    with pytest.raises(NumericalBlowupError) as info:
        burgers_step_explicit(burgers_state.with_stacked(values), burgers_model, inlet, 3 * burgers_model.dt)
    assert info.value.context["variable"] == "u"
    assert info.value.context["step"] == 3
    assert 9 <= info.value.context["node"] <= 11


def test_burgers_rejects_state_on_other_grid(burgers_model):
    other = StateField.from_stacked(Grid1D.from_elements(20, 2.0), ["u"], np.ones(21))
    with pytest.raises(ContractError):
        burgers_step_explicit(other, burgers_model, forcing_for(burgers_model, [0.0, 0.0]), 0.0)


def smooth_bump(grid):
    return (1.0 + 0.1 * np.exp(-(((grid.nodes - 0.4) / 0.1) ** 2)))[None, :]


def test_implicit_and_explicit_steps_agree_to_second_order():
    grid = Grid1D.from_elements(40, 1.0)
    gaps = []
    for dt in (0.002, 0.001, 0.0005):
        model = BurgersModel(grid=grid, reynolds=200.0, dt=dt)
        state = StateField.from_stacked(grid, ["u"], smooth_bump(grid))
        inlet = forcing_for(model, [0.0, 0.0])
        explicit = burgers_step_explicit(state, model, inlet, 0.0)["u"]
        implicit = burgers_step_implicit_single(state, model, inlet, 0.0)["u"]
        gaps.append(np.max(np.abs(implicit - explicit)))
    assert gaps[0] / gaps[1] == pytest.approx(4.0, rel=0.05)
    assert gaps[1] / gaps[2] == pytest.approx(4.0, rel=0.05)


def run_bump(n_elements, dt, n_steps):
    model = BurgersModel(grid=Grid1D.from_elements(n_elements, 1.0), reynolds=200.0, dt=dt)
    values = smooth_bump(model.grid)
    for k in range(n_steps):
        values = advance(model, values, [0.0, 0.0], k * dt)
    return values[0]


def test_burgers_self_convergence():
    # Same end time, dx halved and dt quartered per level; the finest run is the reference
    coarse = run_bump(40, 0.002, 100)
    medium = run_bump(80, 0.0005, 400)
    reference = run_bump(160, 0.000125, 1600)
    error_coarse = np.sqrt(np.mean((coarse - reference[::4]) ** 2))
    error_medium = np.sqrt(np.mean((medium[::2] - reference[::4]) ** 2))
    order = np.log(error_coarse / error_medium) / np.log(4.0)
    assert order >= 0.9


# --- euler ---


def test_euler_reference_state_is_steady(euler_model, euler_state):
    inlet = forcing_for(euler_model, [0.0])
    reference = euler_state.stacked()
    explicit = euler_step_explicit(euler_state, euler_model, inlet, 0.0)
    implicit = euler_step_implicit_single(euler_state, euler_model, inlet, 0.0)
    assert_allclose(explicit.stacked(), reference, atol=1e-12)
    assert_allclose(implicit.stacked(), reference, atol=1e-12)


def test_euler_reference_units(euler_model):
    assert euler_model.sound_speed + euler_model.u0 == pytest.approx(1.0)
    assert euler_model.u0 / euler_model.sound_speed == pytest.approx(0.4)
    assert pressure(euler_model.reference_values(), euler_model.gamma) == pytest.approx(euler_model.pressure)


def test_euler_inlet_state(euler_model, euler_state):
    inlet = forcing_for(euler_model, [0.05])
    t = 0.2
    new = euler_step_explicit(euler_state, euler_model, inlet, t)
    u_in = inlet_value(inlet, t + euler_model.dt)
    rho, u, p = primitives(new.stacked(), euler_model.gamma)
    impedance = euler_model.density * euler_model.sound_speed
    assert u[0] == pytest.approx(u_in)
    # Downstream acoustic wave launched by the forced velocity, on the reference isentrope
    assert p[0] == pytest.approx(euler_model.pressure + impedance * (u_in - euler_model.u0))
    assert rho[0] == pytest.approx((p[0] / euler_model.pressure) ** (1.0 / euler_model.gamma))


def test_euler_unforced_inlet_is_the_reference_state(euler_model):
    assert_allclose(
        inlet_state(euler_model, euler_model.u0),
        euler_model.reference_values()[:, 0],
        rtol=0,
        atol=1e-15,
    )


def test_euler_outlet_admits_no_incoming_wave(euler_model):
    x = euler_model.grid.nodes
    # Right-running acoustic pulse plus an entropy spot near the outlet
    du = 0.01 * np.exp(-(((x - 1.8) / 0.1) ** 2))
    dp = euler_model.density * euler_model.sound_speed * du
    rho = euler_model.density + dp / euler_model.sound_speed**2 + 0.02 * np.exp(-(((x - 1.85) / 0.1) ** 2))
    q = conserved(rho, euler_model.u0 + du, euler_model.pressure + dp, euler_model.gamma).T
    rho_out, u_out, p_out = primitives(outlet_state(q, euler_model)[:, None], euler_model.gamma)
    impedance = euler_model.density * euler_model.sound_speed
    incoming = (p_out - euler_model.pressure) - impedance * (u_out - euler_model.u0)
    assert incoming[0] == pytest.approx(0.0, abs=1e-14)
    assert p_out[0] - euler_model.pressure == pytest.approx(2.0 * dp[-2] - dp[-3], rel=1e-6)


def test_bundled_euler_model_runs_two_convective_times():
    config = parse_config(CONFIG_DIR / "euler_fa10.cfg")
    model = ExperimentFactory.create_from_config(config).fine_model
    values = model.reference_values()
    n_steps = int(round(2.0 / model.dt))
    for k in range(n_steps):
        values = advance(model, values, [0.015], k * model.dt, amplitude_period_ratio=10.0)
    momentum = values[1] - model.density * model.u0
    assert np.max(np.abs(momentum)) < 0.1 * model.u0
    # The disturbance has crossed x = 2 and left the far field at rest
    assert np.max(np.abs(momentum[model.grid.nodes > 1.5])) > 1e-3 * model.u0
    assert np.max(np.abs(momentum[model.grid.nodes > 2.5])) < 1e-6 * model.u0


def test_acoustic_front_travels_at_u0_plus_a():
    model = EulerModel(grid=Grid1D.from_elements(160, 2.0), dt=0.0006)
    amplitude = 0.015 * model.u0
    values = model.reference_values()
    n_steps = int(round(1.0 / model.dt))
    for k in range(n_steps):
        values = advance(model, values, [0.015], k * model.dt)
    t = n_steps * model.dt
    du = values[1] / values[0] - model.u0
    # Leading half-amplitude point of u0 theta sin(omega (t - x / c)) sits at c (t - 1/12)
    last = np.flatnonzero(du >= 0.5 * amplitude).max()
    fraction = (du[last] - 0.5 * amplitude) / (du[last] - du[last + 1])
    x_half = model.grid.nodes[last] + fraction * model.grid.spacing
    speed = x_half / (t - 1.0 / 12.0)
    assert speed == pytest.approx(model.u0 + model.sound_speed, rel=0.02)


def test_flux_jacobian_is_homogeneous(euler_model, rng):
    q = euler_model.reference_values()[:, :8] * (1.0 + 0.05 * rng.standard_normal((3, 8)))
    jacobian = flux_jacobian(q, euler_model.gamma)
    assert_allclose(np.einsum("nij,jn->in", jacobian, q), fluxes(q, euler_model.gamma), atol=1e-12)


def test_positivity_loss_reports_node():
    density = np.ones(12)
    density[7] = -0.1
    with pytest.raises(PositivityLossError) as info:
        check_positive(density, np.ones(12), step=5)
    assert info.value.context == {"node": 7, "variable": "rho", "step": 5}
