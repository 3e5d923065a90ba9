"""Run service - single runs, sweeps and reproducibility checks with their artifacts"""

import filecmp
import logging
import platform
import tempfile
import time
from pathlib import Path
from typing import Any, List, Optional

import numpy as np
import pandas as pd
import pydantic
import scipy
from joblib import Parallel, delayed

from config import load_settings, resolve_output_dir
from data_access import config_dal, diagnostics_dal, manifest_dal, snapshot_dal
from factories import ExperimentFactory
from models import ExperimentResult
from schemas import AssimilationConfig
from utils import hash_text, log_run_summary

from .config_service import resolve_key, serialize_config, with_overrides
from .experiment import run_twin_experiment

logger = logging.getLogger("menkf_app")


def library_versions() -> dict:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "pydantic": pydantic.VERSION,
    }


def build_manifest(config: AssimilationConfig, result: ExperimentResult, artifacts, wall_time: float) -> dict:
    return {
        "config_hash": hash_text(serialize_config(config)),
        "seed": config.seed,
        "model": config.model.kind,
        "coarsening_ratio": config.grid.coarsening_ratio,
        "n_analyses": int(len(result.diagnostics.times)),
        "final_theta_mean": [float(v) for v in result.final_theta_mean],
        "artifacts": sorted(str(Path(p).name) for p in artifacts),
        "versions": library_versions(),
        "wall_time_s": round(wall_time, 3),
    }


def run(config: AssimilationConfig, output_dir: Optional[Path] = None) -> ExperimentResult:
    """Runs one twin experiment and writes its CSVs, snapshots, config copy and manifest."""
    start_time = time.time()
    output_dir = Path(output_dir) if output_dir is not None else resolve_output_dir(config.output_dir)
    output_dir = diagnostics_dal.ensure_output_dir(output_dir)
    n_jobs = config.menkf.n_jobs or load_settings().n_jobs
    logger.info(f"SERVICE: run {config.model.kind} r_C={config.grid.coarsening_ratio} seed={config.seed} -> {output_dir}")

    experiment = ExperimentFactory.create_from_config(config, n_jobs=n_jobs)
    result = run_twin_experiment(experiment)

    artifacts = diagnostics_dal.write_diagnostics(output_dir, result.diagnostics)
    artifacts += snapshot_dal.write_snapshots(output_dir, result.snapshots)
    config_path = output_dir / "config.cfg"
    config_dal.write_config_file(config_path, serialize_config(config))
    artifacts.append(config_path)
    manifest_dal.write_manifest(
        output_dir, build_manifest(config, result, artifacts, time.time() - start_time)
    )
    log_run_summary(logger, f"run {output_dir.name}", "ok", start_time)
    return result


def sweep_directory_name(key: str, value: Any) -> str:
    return f"{key.split('.')[-1]}_{value}"


def sweep(
    config: AssimilationConfig,
    key: str,
    values: List[Any],
    output_dir: Optional[Path] = None,
    parallel: bool = False,
) -> List[Path]:
    """One run per value in its own subdirectory; sequential unless parallel is set."""
    resolve_key(config, key)
    root = Path(output_dir) if output_dir is not None else resolve_output_dir(config.output_dir)
    root = diagnostics_dal.ensure_output_dir(root)
    configs, directories = [], []
    for value in values:
        configs.append(with_overrides(config, [(key, value)]))
        directories.append(root / sweep_directory_name(key, value))
    logger.info(f"SERVICE: sweep over {key} with {len(values)} values -> {root}")

    if parallel and len(configs) > 1:
        Parallel(n_jobs=len(configs))(delayed(run)(c, d) for c, d in zip(configs, directories))
    else:
        for c, d in zip(configs, directories):
            run(c, d)
    return directories


def compare_artifacts(first: Path, second: Path) -> List[str]:
    """Relative paths of CSV artifacts that differ or exist in only one directory."""
    first_files = {p.relative_to(first) for p in first.rglob("*.csv")}
    second_files = {p.relative_to(second) for p in second.rglob("*.csv")}
    mismatches = sorted(str(p) for p in first_files ^ second_files)
    for rel in sorted(first_files & second_files):
        if not filecmp.cmp(first / rel, second / rel, shallow=False):
            mismatches.append(str(rel))
    return mismatches


def verify(config: AssimilationConfig, scratch_dir: Optional[Path] = None) -> List[str]:
    """Runs the configuration twice and returns the CSV artifacts that are not byte-identical."""
    with tempfile.TemporaryDirectory(dir=scratch_dir, prefix="menkf_verify_") as tmp:
        first, second = Path(tmp) / "first", Path(tmp) / "second"
        run(config, first)
        run(config, second)
        mismatches = compare_artifacts(first, second)
    if mismatches:
        logger.error(f"SERVICE: reproducibility check failed for {mismatches}")
    else:
        logger.info("SERVICE: reproducibility check passed, artifacts are byte-identical")
    return mismatches
