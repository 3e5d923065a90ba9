"""Snapshot Data Access Layer - columnar state dumps"""

import logging
from pathlib import Path
from typing import List

import pandas as pd

from models import Snapshot

from .diagnostics_dal import ensure_output_dir, write_frame

logger = logging.getLogger("menkf_app")

SNAPSHOT_DIR = "snapshots"


def snapshot_filename(time: float) -> str:
    return f"t_{time:.4f}.csv"


def write_snapshots(output_dir, snapshots: List[Snapshot]) -> List[Path]:
    """One file per snapshot: x, then estimate and truth of every variable."""
    if not snapshots:
        return []
    directory = ensure_output_dir(Path(output_dir) / SNAPSHOT_DIR)
    paths = []
    for snapshot in snapshots:
        columns = {"x": snapshot.estimate.grid.nodes}
        for name in snapshot.estimate.names:
            columns[f"{name}_estimate"] = snapshot.estimate[name]
            columns[f"{name}_truth"] = snapshot.truth[name]
        path = directory / snapshot_filename(snapshot.time)
        write_frame(pd.DataFrame(columns), path)
        paths.append(path)
    logger.info(f"DAL: wrote {len(paths)} snapshots to {directory}")
    return paths
