import logging
import sys
import time
from pathlib import Path

import click

from services import config_service, run_service
from utils import log_run_summary

from .errors import exits_on_error

logger = logging.getLogger("menkf_app")


@click.command(name="run")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--seed", type=int, default=None, help="Overrides the config seed.")
@click.option("--output-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@click.option("--sweep", "sweep_spec", default=None, metavar="KEY=V1,V2,...", help="One run per value.")
@click.option("--no-state-correction", is_flag=True, help="Parameter-estimation-only analyses.")
@click.option("--parallel", is_flag=True, help="Run sweep members as parallel processes.")
@exits_on_error
def run_command(config_path, seed, output_dir, sweep_spec, no_state_correction, parallel):
    """Runs a twin experiment, or one per value of --sweep."""
    start_time = time.time()
    logger.info(f"CLI: run invoked with config {config_path}")
    config = config_service.parse_config(config_path)
    config = config_service.apply_cli_flags(
        config, seed=seed, output_dir=output_dir, no_state_correction=no_state_correction
    )

    if sweep_spec:
        key, values = config_service.parse_sweep(sweep_spec)
        directories = run_service.sweep(config, key, values, output_dir, parallel=parallel)
        for directory in directories:
            click.echo(str(directory))
        log_run_summary(logger, f"sweep {key}", "ok", start_time)
        return

    result = run_service.run(config, output_dir)
    theta = ", ".join(f"{v:.6g}" for v in result.final_theta_mean)
    click.echo(f"final theta mean: [{theta}]")
    log_run_summary(logger, "run", "ok", start_time)


@click.command(name="verify")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--seed", type=int, default=None, help="Overrides the config seed.")
@click.option("--scratch-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@exits_on_error
def verify_command(config_path, seed, scratch_dir):
    """Runs the configuration twice and compares the CSV artifacts byte for byte."""
    logger.info(f"CLI: verify invoked with config {config_path}")
    config = config_service.apply_cli_flags(config_service.parse_config(config_path), seed=seed)
    mismatches = run_service.verify(config, scratch_dir)
    if mismatches:
        for path in mismatches:
            click.echo(f"differs: {path}", err=True)
        sys.exit(1)
    click.echo("reproducible: all CSV artifacts are byte-identical")
