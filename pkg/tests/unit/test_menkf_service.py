import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from factories import EnsembleFactory
from models import Ensemble, Grid1D, StateField
from services import menkf_analysis, menkf_analysis_report, menkf_forecast, ram_ratio, regularization_metric
from services.experiment import conservativity_residual, sample_observations, generate_truth, settings_for
from services.kalman import build_anomalies, enkf_analysis, enkf_gain, perturb_observations
from services.model import (
    SCHEME_EXPLICIT,
    SCHEME_IMPLICIT,
    advance,
    advance_ensemble,
    forcing_for,
    inlet_value,
    step_field,
)
from services.stochastics_service import ANALYSIS_OBS_PERTURBATION, derive_stream
from utils import AnalysisError, ContractError


def start(exp):
    draws = np.zeros((exp.n_ensemble, len(exp.prior_mean)))
    spread = np.sqrt(exp.prior_variance)
    rng = np.random.default_rng(exp.seed)
    draws += spread * rng.standard_normal(draws.shape)
    return EnsembleFactory.create_initial_state(exp, draws)


def first_observation(exp):
    truth = generate_truth(exp)
    return sample_observations(
        truth, exp.pair, exp.obs_window, exp.obs_noise_variance, derive_stream(exp.seed, (1,))
    )[0]


def test_forecast_advances_fine_and_members(small_experiment):
    state = start(small_experiment)
    settings = settings_for(small_experiment)
    new = menkf_forecast(state, settings, 0.0)
    assert new.time == pytest.approx(small_experiment.dt)
    assert new.cycle_index == 0
    assert_array_equal(new.ensemble.params, state.ensemble.params)
    assert new.ensemble.members.shape == state.ensemble.members.shape
    assert not np.array_equal(new.ensemble.members, state.ensemble.members)


def test_full_analysis_corrects_and_smooths(small_experiment):
    state = start(small_experiment)
    obs = first_observation(small_experiment)
    report = menkf_analysis_report(
        state, obs, derive_stream(small_experiment.seed, (2, 0)), settings_for(small_experiment), 0.0
    )
    assert report.state.cycle_index == 1
    assert report.corrected_fine is not None
    assert report.smoothing_ratio is not None and np.isfinite(report.smoothing_ratio)
    assert not np.array_equal(report.state.fine_state["u"], report.forecast_fine["u"])
    assert report.previous_fine is state.fine_state


def test_analysis_matches_report_state(small_experiment):
    state = start(small_experiment)
    obs = first_observation(small_experiment)
    settings = settings_for(small_experiment)
    stream = derive_stream(small_experiment.seed, (2, 0))
    direct = menkf_analysis(state, obs, stream, settings, 0.0)
    report = menkf_analysis_report(state, obs, stream, settings, 0.0)
    assert_array_equal(direct.fine_state["u"], report.state.fine_state["u"])
    assert_array_equal(direct.theta_mean, report.state.theta_mean)


def test_parameter_estimation_only_keeps_model_solution(make_experiment):
    exp = make_experiment(menkf={"enable_state_correction": False})
    state = start(exp)
    report = menkf_analysis_report(
        state, first_observation(exp), derive_stream(exp.seed, (2, 0)), settings_for(exp), 0.0
    )
    assert report.corrected_fine is None
    assert report.smoothing_ratio is None
    gamma, gamma_star = conservativity_residual(
        report.previous_fine, report.state.fine_state, exp.fine_model, state.theta_mean, 0.0
    )
    assert np.max(np.abs(gamma)) <= 1e-12
    assert np.max(np.abs(gamma_star)) <= 1e-8
    assert not np.array_equal(report.state.theta_mean, state.theta_mean)


def test_correction_without_smoothing(make_experiment):
    exp = make_experiment(menkf={"enable_smoothing": False})
    state = start(exp)
    report = menkf_analysis_report(
        state, first_observation(exp), derive_stream(exp.seed, (2, 0)), settings_for(exp), 0.0
    )
    assert report.smoothing_ratio is None
    assert_array_equal(report.state.fine_state["u"], report.corrected_fine["u"])


@pytest.mark.parametrize("enable_smoothing", [True, False])
def test_corrected_fine_state_keeps_its_boundary_conditions(make_experiment, enable_smoothing):
    exp = make_experiment(menkf={"enable_smoothing": enable_smoothing})
    state = start(exp)
    settings = settings_for(exp)
    report = menkf_analysis_report(
        state, first_observation(exp), derive_stream(exp.seed, (2, 0)), settings, 0.0
    )
    u_in = inlet_value(forcing_for(settings.fine_model, state.theta_mean), exp.dt)
    for field in (report.corrected_fine, report.state.fine_state):
        u = field["u"]
        assert u[0] == u_in
        assert u[-1] == pytest.approx(2.0 * u[-2] - u[-3], abs=1e-14)
    # The correction still reached the interior
    assert not np.array_equal(report.corrected_fine["u"][1:-1], report.forecast_fine["u"][1:-1])


def test_unit_coarsening_reduces_to_the_enkf_update(make_experiment, rng):
    exp = make_experiment(
        grid={"coarsening_ratio": 1},
        menkf={"enable_smoothing": False},
        filter={"param_inflation": [0.0, 0.0]},
    )
    state = EnsembleFactory.create_initial_state(exp, np.zeros((exp.n_ensemble, 2)))
    members = state.ensemble.members + 0.01 * rng.standard_normal(state.ensemble.members.shape)
    state = state.model_copy(
        update={"ensemble": Ensemble(members=members, params=state.ensemble.params)}
    )
    settings = settings_for(exp)
    obs = first_observation(exp)
    stream = derive_stream(exp.seed, (2, 0))
    report = menkf_analysis_report(state, obs, stream, settings, 0.0)

    # Identical parameters carry no anomalies, so only the state is updated
    assert_array_equal(report.state.ensemble.params, state.ensemble.params)
    params = state.ensemble.params
    forecast_members = advance_ensemble(settings.coarse_model, members, params, 0.0, SCHEME_IMPLICIT)
    forecast_ens = Ensemble(members=forecast_members, params=params)
    predicted = obs.apply(forecast_members).T
    obs_stream = stream.child(ANALYSIS_OBS_PERTURBATION)
    _, draws = perturb_observations(obs, exp.n_ensemble, obs_stream)
    gain = enkf_gain(build_anomalies(forecast_ens, obs, predicted, draws))

    forecast = report.forecast_fine.to_vector()
    expected = forecast + gain @ (obs.values - obs.apply(forecast))
    assert_allclose(report.corrected_fine.to_vector()[1:-1], expected[1:-1], rtol=0, atol=1e-12)
    analysed = enkf_analysis(forecast_ens, obs, predicted, obs_stream)
    assert_allclose(report.state.ensemble.members, analysed.members, rtol=0, atol=1e-12)


def test_fine_state_and_members_evolve_independently(small_experiment):
    state = start(small_experiment)
    settings = settings_for(small_experiment)
    dt = small_experiment.dt
    n_vars = len(settings.coarse_model.variables)
    fine = state.fine_state
    members = [m.reshape(n_vars, -1) for m in state.ensemble.members]
    for k in range(30):
        t = k * dt
        state = menkf_forecast(state, settings, t)
        fine = step_field(fine, settings.fine_model, state.theta_mean, t, SCHEME_EXPLICIT)
        members = [
            advance(settings.coarse_model, m, theta, t, SCHEME_EXPLICIT)
            for m, theta in zip(members, state.ensemble.params)
        ]
    assert_allclose(state.fine_state.stacked(), fine.stacked(), rtol=0, atol=1e-13)
    separate = np.stack([m.reshape(-1) for m in members])
    assert_allclose(state.ensemble.members, separate, rtol=0, atol=1e-13)


def test_identical_members_leave_the_forecast(make_experiment):
    exp = make_experiment(
        filter={"n_ensemble": 2, "param_prior_variance": [0.0, 0.0], "param_inflation": [0.0, 0.0]}
    )
    state = EnsembleFactory.create_initial_state(exp, np.zeros((2, 2)))
    report = menkf_analysis_report(
        state, first_observation(exp), derive_stream(exp.seed, (2, 0)), settings_for(exp), 0.0
    )
    assert_array_equal(report.state.fine_state["u"], report.forecast_fine["u"])
    assert_array_equal(report.state.theta_mean, state.theta_mean)
    assert report.smoothing_ratio is None


def test_fine_blowup_is_attributed_to_its_stage(small_experiment):
    state = start(small_experiment)
    values = state.fine_state.stacked()
    values[0, 10] = np.nan
    broken = state.model_copy(update={"fine_state": state.fine_state.with_stacked(values)})
    with pytest.raises(AnalysisError) as info:
        menkf_analysis_report(
            broken,
            first_observation(small_experiment),
            derive_stream(1, (2, 0)),
            settings_for(small_experiment),
            0.0,
        )
    assert info.value.stage == "fine_forecast"
    assert info.value.context["cycle"] == 0
    assert np.isnan(broken.fine_state["u"][10])


def test_member_blowup_is_attributed_to_the_dual_filter(small_experiment):
    state = start(small_experiment)
    members = state.ensemble.members.copy()
    members[4, 6] = np.inf
    broken = state.model_copy(
        update={"ensemble": Ensemble(members=members, params=state.ensemble.params)}
    )
    with pytest.raises(AnalysisError) as info:
        menkf_analysis_report(
            broken,
            first_observation(small_experiment),
            derive_stream(1, (2, 0)),
            settings_for(small_experiment),
            0.0,
        )
    assert info.value.stage == "dual_enkf"
    assert info.value.context["member"] == 4


def test_regularization_metric():
    grid = Grid1D.from_elements(10, 1.0)
    wiggle = (-1.0) ** np.arange(11)
    rough = StateField(grid=grid, variables={"u": wiggle})
    smooth = StateField(grid=grid, variables={"u": 0.5 * wiggle})
    flat = StateField(grid=grid, variables={"u": np.ones(11)})
    assert regularization_metric(rough, smooth) == pytest.approx(0.25)
    assert regularization_metric(flat, flat) == 1.0
    assert regularization_metric(flat, rough) == float("inf")


def test_ram_ratio():
    assert ram_ratio(4, 100, 3) == 2.5625
    assert ram_ratio(8, 100, 3) == 1.1953125
    assert ram_ratio(1, 100, 1) == 101.0
    with pytest.raises(ContractError):
        ram_ratio(0, 100, 3)
    with pytest.raises(ContractError):
        ram_ratio(4, 100, 4)
