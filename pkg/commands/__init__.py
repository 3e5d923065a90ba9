# Commands package - click entry points grouped by concern

import click

from utils import setup_logging
from utils.logging import LEVELS

from .run_commands import run_command, verify_command
from .tool_commands import ram_ratio_command


@click.group(name="menkf")
@click.option(
    "--log-level",
    type=click.Choice(LEVELS, case_sensitive=False),
    default=None,
    help="Overrides LOG_LEVEL for this invocation.",
)
def cli(log_level):
    """Multigrid ensemble Kalman filter twin experiments."""
    if log_level:
        setup_logging(log_level)


for command in (run_command, verify_command, ram_ratio_command):
    cli.add_command(command)

__all__ = ["cli", "run_command", "verify_command", "ram_ratio_command"]
