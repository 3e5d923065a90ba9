"""Observation service - sensor placement and synthetic noisy observations"""

import logging
from typing import List, Tuple

import numpy as np

from models import Grid1D, GridPair, ObservationSet, SeededStream, TruthRecord
from services.stochastics_service import gaussian_array
from utils import ContractError

logger = logging.getLogger("menkf_app")


def sensor_nodes(grid: Grid1D, window: Tuple[float, float]) -> np.ndarray:
    """Indices of grid nodes with x in the half-open window [start, end)."""
    start, end = window
    if not end > start:
        raise ContractError(f"observation window {window} is empty")
    x = grid.nodes
    # Tolerance keeps nodes that sit on the window start despite rounding
    tol = 1e-9 * grid.spacing
    return np.flatnonzero((x >= start - tol) & (x < end - tol))


def sample_observations(
    truth: TruthRecord,
    pair: GridPair,
    window: Tuple[float, float],
    noise_variance: float,
    stream: SeededStream,
    variable_offset: int = 0,
) -> List[ObservationSet]:
    """Noisy truth at the coarse sensors for every recorded truth step.

    Observation k draws its noise from stream.child(k). variable_offset is the
    position of the observed variable in the stacked coarse state.
    """
    nodes = sensor_nodes(pair.coarse, window)
    if nodes.size == 0:
        raise ContractError(f"no coarse node falls inside the observation window {window}")
    fine_nodes = nodes * pair.r_c
    state_indices = variable_offset * pair.coarse.n_nodes + nodes
    logger.info(
        f"SERVICE: sampling {len(truth.steps)} observation sets at {nodes.size} sensors (R={noise_variance:.3g})"
    )

    observations = []
    for k, (step, time, field) in enumerate(zip(truth.steps, truth.times, truth.fields)):
        exact = field[fine_nodes]
        if noise_variance > 0:
            values = gaussian_array(stream.child(k), exact, noise_variance, exact.shape)
        else:
            values = exact.copy()
        observations.append(
            ObservationSet(
                sensor_nodes=nodes,
                values=values,
                noise_variance=noise_variance,
                state_indices=state_indices,
                step=int(step),
                time=float(time),
            )
        )
    return observations
