import logging
import os
from pathlib import Path

from pydantic import BaseModel, Field

from utils import ConfigurationError

# --- Cache so the environment is read once per process ---
_settings = None


class RuntimeSettings(BaseModel):
    """Environment-derived defaults for a run"""

    log_level: str = "INFO"
    n_jobs: int = Field(default=1, ge=1)
    output_root: Path = Path(".")


def load_settings(refresh: bool = False) -> RuntimeSettings:
    """Read LOG_LEVEL, MENKF_N_JOBS and MENKF_OUTPUT_ROOT from the environment."""
    global _settings
    logger = logging.getLogger("menkf_app")

    if _settings is not None and not refresh:
        return _settings

    raw_jobs = os.environ.get("MENKF_N_JOBS", "1")
    try:
        n_jobs = int(raw_jobs)
    except ValueError as e:
        raise ConfigurationError(
            f"MENKF_N_JOBS must be an integer, got '{raw_jobs}'", key="MENKF_N_JOBS"
        ) from e
    if n_jobs < 1:
        # -1 style "all cores" requests map onto the machine's CPU count
        n_jobs = os.cpu_count() or 1

    _settings = RuntimeSettings(
        log_level=os.environ.get("LOG_LEVEL", "INFO").upper(),
        n_jobs=n_jobs,
        output_root=Path(os.environ.get("MENKF_OUTPUT_ROOT", ".")),
    )
    logger.debug(
        f"CONFIG: settings loaded (n_jobs={_settings.n_jobs}, output_root={_settings.output_root})"
    )
    return _settings


def resolve_output_dir(output_dir: str) -> Path:
    """Relative output directories are placed under MENKF_OUTPUT_ROOT."""
    path = Path(output_dir)
    if path.is_absolute():
        return path
    return load_settings().output_root / path
