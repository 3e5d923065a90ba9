"""Grid service - coarsening and 4th-order Lagrange grid transfer operators"""

import logging
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from factories import GridFactory
from models import Grid1D, GridPair, StateField
from utils import ContractError

logger = logging.getLogger("menkf_app")

STENCIL_WIDTH = 4


def coarsen(fine: Grid1D, r_c: int) -> GridPair:
    """Suppression coarsening: keep every r_c-th fine node, both endpoints included."""
    pair = GridFactory.coarsen(fine, r_c)
    logger.debug(
        f"SERVICE: coarsen {fine.n_elements} -> {pair.coarse.n_elements} elements (r_C={r_c})"
    )
    return pair


def lagrange_weights(position: float, stencil: np.ndarray) -> np.ndarray:
    """Lagrange basis values at position for the given (index-space) stencil nodes."""
    weights = np.ones(len(stencil))
    for k, pk in enumerate(stencil):
        for l, pl in enumerate(stencil):
            if l != k:
                weights[k] *= (position - pl) / (pk - pl)
    return weights


@lru_cache(maxsize=64)
def prolongation_matrix(pair: GridPair) -> sp.csr_matrix:
    """Pi_F as a sparse (n_fine x n_coarse) matrix; one-sided stencils near the ends."""
    n_fine, n_coarse, r = pair.fine.n_nodes, pair.coarse.n_nodes, pair.r_c
    width = min(STENCIL_WIDTH, n_coarse)
    rows, cols, vals = [], [], []
    for i in range(n_fine):
        q, rem = divmod(i, r)
        if rem == 0:
            rows.append(i)
            cols.append(q)
            vals.append(1.0)
            continue
        start = min(max(q - 1, 0), n_coarse - width)
        stencil = np.arange(start, start + width, dtype=float)
        weights = lagrange_weights(q + rem / r, stencil)
        rows.extend([i] * width)
        cols.extend(range(start, start + width))
        vals.extend(weights.tolist())
    return sp.csr_matrix((vals, (rows, cols)), shape=(n_fine, n_coarse))


@lru_cache(maxsize=64)
def restriction_matrix(pair: GridPair) -> sp.csr_matrix:
    """Pi_C as a sparse (n_coarse x n_fine) matrix: injection at coincident nodes."""
    n_coarse = pair.coarse.n_nodes
    rows = np.arange(n_coarse)
    cols = rows * pair.r_c
    return sp.csr_matrix(
        (np.ones(n_coarse), (rows, cols)), shape=(n_coarse, pair.fine.n_nodes)
    )


def restrict_values(values: np.ndarray, pair: GridPair) -> np.ndarray:
    """Apply Pi_C along the last axis of an array of fine-grid values."""
    values = np.asarray(values, dtype=float)
    if values.shape[-1] != pair.fine.n_nodes:
        raise ContractError(
            f"values have {values.shape[-1]} nodes, fine grid has {pair.fine.n_nodes}",
            context={"stage": "projection"},
        )
    if pair.r_c == 1:
        return values.copy()
    matrix = restriction_matrix(pair)
    flat = values.reshape(-1, pair.fine.n_nodes)
    coarse = (matrix @ flat.T).T
    return np.asarray(coarse).reshape(values.shape[:-1] + (pair.coarse.n_nodes,))


def prolong_values(values: np.ndarray, pair: GridPair) -> np.ndarray:
    """Apply Pi_F along the last axis of an array of coarse-grid values."""
    values = np.asarray(values, dtype=float)
    if values.shape[-1] != pair.coarse.n_nodes:
        raise ContractError(
            f"values have {values.shape[-1]} nodes, coarse grid has {pair.coarse.n_nodes}",
            context={"stage": "projection"},
        )
    if pair.r_c == 1:
        return values.copy()
    matrix = prolongation_matrix(pair)
    flat = values.reshape(-1, pair.coarse.n_nodes)
    fine = (matrix @ flat.T).T
    return np.asarray(fine).reshape(values.shape[:-1] + (pair.fine.n_nodes,))


def project_to_coarse(field: StateField, pair: GridPair) -> StateField:
    """Pi_C applied to every variable of a fine-grid field."""
    if field.grid != pair.fine:
        raise ContractError("field does not live on the fine grid of the pair", context={"stage": "projection"})
    return StateField.from_stacked(pair.coarse, field.names, restrict_values(field.stacked(), pair))


def project_to_fine(field: StateField, pair: GridPair) -> StateField:
    """Pi_F applied to every variable of a coarse-grid field."""
    if field.grid != pair.coarse:
        raise ContractError("field does not live on the coarse grid of the pair", context={"stage": "projection"})
    return StateField.from_stacked(pair.fine, field.names, prolong_values(field.stacked(), pair))
