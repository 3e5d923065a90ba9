"""Exit-status mapping shared by every command"""

import logging
import sys
from functools import wraps

import click

from utils import ApplicationError

logger = logging.getLogger("menkf_app")

EXIT_UNEXPECTED = 1


def report_error(error: ApplicationError) -> int:
    stage = error.stage or "run"
    details = {k: v for k, v in error.context.items() if k != "stage"}
    suffix = f" ({', '.join(f'{k}={v}' for k, v in details.items())})" if details else ""
    click.echo(f"Error [{stage}]: {error.message}{suffix}", err=True)
    logger.error(f"CLI: {type(error).__name__} in stage '{stage}': {error.message}{suffix}")
    return error.exit_code


def exits_on_error(command):
    """Turns ApplicationError into its exit status; anything else exits with 1."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ApplicationError as e:
            sys.exit(report_error(e))
        except Exception as e:
            logger.error(f"CLI: unexpected error: {e}", exc_info=True)
            click.echo(f"Error [internal]: {e}", err=True)
            sys.exit(EXIT_UNEXPECTED)

    return wrapper
