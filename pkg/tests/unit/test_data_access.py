import numpy as np
import pandas as pd
import pytest

from data_access import config_dal, diagnostics_dal, manifest_dal, snapshot_dal
from models import DiagnosticsSeries, Grid1D, Snapshot, StateField
from utils import ConfigurationError, StorageError


@pytest.fixture
def series():
    return DiagnosticsSeries(
        times=np.array([0.1, 0.2, 0.3]),
        theta_mean=np.array([[0.1, 0.3], [0.15, 0.2], [0.19, 0.05]]),
        theta_std=np.full((3, 2), 0.01),
        theta_truth=np.tile([0.2, 0.0], (3, 1)),
        rmse=np.array([0.5, 0.25, 0.125]),
        gamma_max=np.zeros(3),
        gamma_hf=np.zeros(3),
        smoothing_ratio=np.array([np.nan, 0.5, 0.25]),
    )


def test_diagnostics_files_and_columns(tmp_path, series):
    paths = diagnostics_dal.write_diagnostics(tmp_path, series)
    assert sorted(p.name for p in paths) == sorted(diagnostics_dal.DIAGNOSTICS_FILES)

    theta = pd.read_csv(tmp_path / "theta.csv")
    assert list(theta.columns) == [
        "time",
        "theta1_mean",
        "theta1_std",
        "theta1_ci_low",
        "theta1_ci_high",
        "theta2_mean",
        "theta2_std",
        "theta2_ci_low",
        "theta2_ci_high",
    ]
    np.testing.assert_allclose(theta["theta1_ci_low"], [0.1 - 0.0196, 0.15 - 0.0196, 0.19 - 0.0196])
    np.testing.assert_allclose(theta["theta2_ci_high"], [0.3196, 0.2196, 0.0696])
    truth = pd.read_csv(tmp_path / "theta_truth.csv")
    assert list(truth.columns) == ["time", "theta1", "theta2"]
    gamma = pd.read_csv(tmp_path / "gamma.csv")
    assert list(gamma.columns) == ["time", "gamma_max", "gamma_hf"]

    regularization = pd.read_csv(tmp_path / "regularization.csv")
    assert len(regularization) == 2
    np.testing.assert_allclose(regularization["hf_energy_ratio"], [0.5, 0.25])


def test_floats_are_written_with_full_precision(tmp_path, series):
    diagnostics_dal.write_diagnostics(tmp_path, series)
    text = (tmp_path / "theta.csv").read_text()
    assert "0.10000000000000001" in text
    assert "\r" not in text


def test_single_parameter_columns():
    assert diagnostics_dal.param_names(1) == ["theta"]
    assert diagnostics_dal.param_names(2) == ["theta1", "theta2"]


def test_series_lengths_must_agree(series):
    with pytest.raises(ValueError):
        DiagnosticsSeries(**{**series.__dict__, "rmse": np.zeros(2)})


def test_output_dir_is_created(tmp_path):
    target = tmp_path / "a" / "b"
    assert diagnostics_dal.ensure_output_dir(target) == target
    assert target.is_dir()


def test_output_dir_below_a_file_fails(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    with pytest.raises(StorageError) as info:
        diagnostics_dal.ensure_output_dir(blocker / "sub")
    assert info.value.exit_code == 7


def test_snapshot_files(tmp_path):
    grid = Grid1D.from_elements(4, 1.0)
    estimate = StateField(grid=grid, variables={"u": np.linspace(1.0, 0.0, 5)})
    truth = StateField(grid=grid, variables={"u": np.ones(5)})
    paths = snapshot_dal.write_snapshots(tmp_path, [Snapshot(time=0.1, estimate=estimate, truth=truth)])
    assert [p.name for p in paths] == ["t_0.1000.csv"]
    frame = pd.read_csv(paths[0])
    assert list(frame.columns) == ["x", "u_estimate", "u_truth"]
    np.testing.assert_allclose(frame["x"], grid.nodes)


def test_no_snapshots_no_directory(tmp_path):
    assert snapshot_dal.write_snapshots(tmp_path, []) == []
    assert not (tmp_path / snapshot_dal.SNAPSHOT_DIR).exists()


def test_manifest_round_trip(tmp_path):
    manifest = {"seed": 7, "artifacts": ["rmse.csv", "theta.csv"], "final_theta_mean": [0.2, 0.0]}
    manifest_dal.write_manifest(tmp_path, manifest)
    assert manifest_dal.read_manifest(tmp_path) == manifest


def test_missing_manifest(tmp_path):
    with pytest.raises(StorageError):
        manifest_dal.read_manifest(tmp_path)


def test_config_files(tmp_path):
    path = tmp_path / "run.cfg"
    config_dal.write_config_file(path, "seed: 3\n")
    assert config_dal.read_config_file(path) == {"seed": 3}
    with pytest.raises(StorageError):
        config_dal.read_config_file(tmp_path / "missing.cfg")
    assert config_dal.parse_config_text("") == {}
    with pytest.raises(ConfigurationError):
        config_dal.parse_config_text("just a string")
