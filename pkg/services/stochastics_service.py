"""Stochastics service - seed-derived Gaussian streams"""

import logging
import math
from typing import Iterable

import numpy as np

from models import SeededStream
from utils import ContractError

logger = logging.getLogger("menkf_app")

# First lineage label: what the noise is for
PURPOSE_OBSERVATION_SYNTHESIS = 1
PURPOSE_ANALYSIS = 2
PURPOSE_PRIOR = 3

# Second-level labels inside an analysis cycle
ANALYSIS_OBS_PERTURBATION = 0
ANALYSIS_PARAM_INFLATION = 1


def derive_stream(master_seed: int, lineage: Iterable[int] = ()) -> SeededStream:
    """Returns the stream identified by (master_seed, lineage); a pure function of its inputs."""
    return SeededStream(master_seed=int(master_seed), lineage=tuple(lineage))


def gaussian(stream: SeededStream, mean: float, variance: float) -> float:
    """Draws one sample from N(mean, variance); variance 0 returns mean exactly."""
    if variance < 0:
        raise ContractError(
            f"variance must be non-negative, got {variance}",
            context={"variance": variance},
        )
    if variance == 0:
        return float(mean)
    return float(mean + math.sqrt(variance) * stream.generator.standard_normal())


def gaussian_array(stream: SeededStream, mean, variance, size) -> np.ndarray:
    """Vectorized gaussian(): mean and variance broadcast against size."""
    variance = np.asarray(variance, dtype=float)
    if np.any(variance < 0):
        raise ContractError("variance must be non-negative", context={"variance": variance.tolist()})
    draws = stream.generator.standard_normal(size)
    return np.asarray(mean, dtype=float) + np.sqrt(variance) * draws


def member_draws(stream: SeededStream, n_members: int, variance, dim: int) -> np.ndarray:
    """One N(0, variance) vector of length dim per member, each from the member's own lineage.

    Returns an array of shape (n_members, dim). Member i's draws depend only on
    stream.lineage + (i,), so they do not change with the ensemble size.
    """
    variance = np.broadcast_to(np.asarray(variance, dtype=float), (dim,))
    if np.any(variance < 0):
        raise ContractError("variance must be non-negative", context={"variance": variance.tolist()})
    out = np.zeros((n_members, dim))
    if not np.any(variance > 0):
        return out
    for i in range(n_members):
        out[i] = gaussian_array(stream.child(i), 0.0, variance, dim)
    return out
