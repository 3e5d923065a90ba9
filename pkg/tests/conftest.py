import copy

import numpy as np
import pytest

from factories import ExperimentFactory
from models import BurgersModel, EulerModel, Grid1D, StateField
from schemas import AssimilationConfig
from services.stochastics_service import derive_stream

# Small Burgers twin experiment: 40 fine elements over 2 wavelengths, r_C = 2
SMALL_BURGERS_CONFIG = {
    "seed": 7,
    "output_dir": "output/test",
    "model": {"kind": "burgers", "reynolds": 200.0, "dt": 0.002},
    "grid": {"n_elements": 40, "domain_length": 2.0, "coarsening_ratio": 2},
    "filter": {
        "n_ensemble": 10,
        "obs_noise_variance": 0.0025,
        "obs_every_n_steps": 5,
        "param_prior_mean": [0.0, 0.3],
        "param_prior_variance": [0.0025, 0.0025],
        "param_inflation": [1.0e-8, 1.0e-8],
    },
    "menkf": {"n_jobs": 1},
    "experiment": {
        "truth_params": [0.2, 0.0],
        "obs_window": [0.0, 0.5],
        "spinup_time": 0.2,
        "da_window": 0.2,
        "snapshot_times": [0.1],
    },
}


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow", action="store_true", default=False, help="run full twin experiments"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def config_data(**sections):
    """Deep copy of the small Burgers config with per-section updates merged in.

    The model section is replaced whole since its keys depend on its kind.
    """
    data = copy.deepcopy(SMALL_BURGERS_CONFIG)
    for key, value in sections.items():
        if key != "model" and isinstance(value, dict) and isinstance(data.get(key), dict):
            data[key].update(value)
        else:
            data[key] = value
    return data


@pytest.fixture
def small_config():
    return AssimilationConfig.model_validate(config_data())


@pytest.fixture
def small_experiment(small_config):
    return ExperimentFactory.create_from_config(small_config, n_jobs=1)


@pytest.fixture
def grid():
    return Grid1D.from_elements(40, 2.0)


@pytest.fixture
def burgers_model(grid):
    return BurgersModel(grid=grid, reynolds=200.0, dt=0.002)


@pytest.fixture
def euler_model(grid):
    return EulerModel(grid=grid, dt=0.005)


@pytest.fixture
def burgers_state(burgers_model):
    return StateField.from_stacked(
        burgers_model.grid, burgers_model.variables, burgers_model.reference_values()
    )


@pytest.fixture
def euler_state(euler_model):
    return StateField.from_stacked(
        euler_model.grid, euler_model.variables, euler_model.reference_values()
    )


@pytest.fixture
def stream():
    return derive_stream(1234, (9,))


@pytest.fixture
def rng():
    return np.random.default_rng(20240)


@pytest.fixture
def make_config():
    """Validated small config with per-section updates, e.g. make_config(grid={"coarsening_ratio": 4})."""

    def build(**sections):
        return AssimilationConfig.model_validate(config_data(**sections))

    return build


@pytest.fixture
def make_experiment(make_config):
    def build(**sections):
        return ExperimentFactory.create_from_config(make_config(**sections), n_jobs=1)

    return build


@pytest.fixture
def raw_config():
    """Plain-dict small config for schema and parser tests."""
    return config_data()
