"""Run manifest Data Access Layer"""

import json
import logging
from pathlib import Path

from utils import StorageError

logger = logging.getLogger("menkf_app")

MANIFEST_FILE = "manifest.json"


def write_manifest(output_dir, manifest: dict) -> Path:
    path = Path(output_dir) / MANIFEST_FILE
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(manifest, handle, indent=2, sort_keys=True)
            handle.write("\n")
    except (OSError, TypeError) as e:
        logger.error(f"DAL: failed to write manifest {path}: {e}", exc_info=True)
        raise StorageError(f"failed to write manifest {path}: {e}", context={"path": str(path)}) from e
    logger.info(f"DAL: wrote run manifest {path}")
    return path


def read_manifest(output_dir) -> dict:
    path = Path(output_dir) / MANIFEST_FILE
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise StorageError(f"cannot read manifest {path}: {e}", context={"path": str(path)}) from e
