import logging

import click

from services import ram_ratio

from .errors import exits_on_error

logger = logging.getLogger("menkf_app")


@click.command(name="ram-ratio")
@click.argument("coarsening_ratio", type=int)
@click.argument("n_ensemble", type=int)
@click.argument("dims", type=int, default=3)
@exits_on_error
def ram_ratio_command(coarsening_ratio, n_ensemble, dims):
    """Memory of an MEnKF run relative to one fine simulation."""
    ratio = ram_ratio(coarsening_ratio, n_ensemble, dims)
    logger.debug(f"CLI: ram_ratio({coarsening_ratio}, {n_ensemble}, {dims}) = {ratio}")
    click.echo(repr(ratio))
