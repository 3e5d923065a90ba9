import os
import sys

from utils import setup_logging

# Initialize logging FIRST
logger = setup_logging()
logger.info("APP: Logging system initialized")

# Import commands AFTER logging is set up
from commands import cli  # noqa: E402

logger.debug(f"APP: Python version: {sys.version}")
logger.debug(f"APP: Running on platform: {sys.platform}")
logger.debug(f"APP: Current working directory: {os.getcwd()}")
logger.debug(f"APP: Registered commands: {sorted(cli.commands)}")


if __name__ == "__main__":
    cli()
