"""Diagnostics Data Access Layer - CSV artifacts of a twin experiment"""

import logging
import os
from pathlib import Path
from typing import List

import numpy as np
import pandas as pd

from models import DiagnosticsSeries
from utils import FLOAT_FORMAT, StorageError, timed_execution

logger = logging.getLogger("menkf_app")

THETA_FILE = "theta.csv"
THETA_TRUTH_FILE = "theta_truth.csv"
RMSE_FILE = "rmse.csv"
GAMMA_FILE = "gamma.csv"
REGULARIZATION_FILE = "regularization.csv"
DIAGNOSTICS_FILES = (THETA_FILE, THETA_TRUTH_FILE, RMSE_FILE, GAMMA_FILE, REGULARIZATION_FILE)


def param_names(n_params: int) -> List[str]:
    if n_params == 1:
        return ["theta"]
    return [f"theta{i + 1}" for i in range(n_params)]


def ensure_output_dir(path) -> Path:
    """Create the directory if missing; an unwritable directory is a StorageError."""
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error(f"DAL: cannot create output directory {path}: {e}", exc_info=True)
        raise StorageError(f"cannot create output directory {path}: {e}", context={"path": str(path)}) from e
    if not os.access(path, os.W_OK):
        raise StorageError(f"output directory {path} is not writable", context={"path": str(path)})
    return path


def write_frame(frame: pd.DataFrame, path: Path):
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        logger.error(f"DAL: failed to write {path}: {e}", exc_info=True)
        raise StorageError(f"failed to write {path}: {e}", context={"path": str(path)}) from e
    logger.debug(f"DAL: wrote {path} ({len(frame)} rows)")


def _theta_frame(series: DiagnosticsSeries) -> pd.DataFrame:
    """Mean, ensemble std and the 95% credible interval per parameter."""
    columns = {"time": series.times}
    low, high = series.theta_ci_low, series.theta_ci_high
    for i, name in enumerate(param_names(series.theta_mean.shape[1])):
        columns[f"{name}_mean"] = series.theta_mean[:, i]
        columns[f"{name}_std"] = series.theta_std[:, i]
        columns[f"{name}_ci_low"] = low[:, i]
        columns[f"{name}_ci_high"] = high[:, i]
    return pd.DataFrame(columns)


def _theta_truth_frame(series: DiagnosticsSeries) -> pd.DataFrame:
    columns = {"time": series.times}
    for i, name in enumerate(param_names(series.theta_truth.shape[1])):
        columns[name] = series.theta_truth[:, i]
    return pd.DataFrame(columns)


@timed_execution(logger, "diagnostics CSV write")
def write_diagnostics(output_dir, series: DiagnosticsSeries) -> List[Path]:
    """Writes theta, theta_truth, rmse, gamma and regularization CSVs; returns their paths."""
    output_dir = ensure_output_dir(output_dir)
    smoothed = ~np.isnan(series.smoothing_ratio)
    frames = {
        THETA_FILE: _theta_frame(series),
        THETA_TRUTH_FILE: _theta_truth_frame(series),
        RMSE_FILE: pd.DataFrame({"time": series.times, "rmse": series.rmse}),
        GAMMA_FILE: pd.DataFrame(
            {"time": series.times, "gamma_max": series.gamma_max, "gamma_hf": series.gamma_hf}
        ),
        # Only cycles where a smoothing iteration ran
        REGULARIZATION_FILE: pd.DataFrame(
            {"time": series.times[smoothed], "hf_energy_ratio": series.smoothing_ratio[smoothed]}
        ),
    }
    paths = []
    for name, frame in frames.items():
        path = output_dir / name
        write_frame(frame, path)
        paths.append(path)
    logger.info(f"DAL: wrote {len(paths)} diagnostics files to {output_dir}")
    return paths
