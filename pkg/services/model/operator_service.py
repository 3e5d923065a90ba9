"""Matrix-splitting (Jacobi) operations on assembled implicit operators"""

import numpy as np

from models import ModelOperator


def _block_apply(blocks: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    return np.einsum("...ij,...j->...i", blocks, vectors)


def jacobi_sweep(operator: ModelOperator, guess: np.ndarray) -> np.ndarray:
    """One Jacobi iteration of Psi x = c from a guess.

    guess has shape (..., n_nodes, b) and includes the boundary nodes; the
    result holds the n_nodes - 2 interior nodes.
    """
    off_diagonal = _block_apply(operator.lower, guess[..., :-2, :]) + _block_apply(
        operator.upper, guess[..., 2:, :]
    )
    residual_rhs = operator.rhs - off_diagonal
    if operator.block_size == 1:
        return residual_rhs / operator.diag[..., 0]
    return np.linalg.solve(operator.diag, residual_rhs[..., None])[..., 0]


def operator_residual(operator: ModelOperator, state: np.ndarray) -> np.ndarray:
    """Psi x - c on interior rows for a full-node state of shape (..., n_nodes, b)."""
    return (
        _block_apply(operator.lower, state[..., :-2, :])
        + _block_apply(operator.diag, state[..., 1:-1, :])
        + _block_apply(operator.upper, state[..., 2:, :])
        - operator.rhs
    )


def relax(base: np.ndarray, update: np.ndarray, relaxation: float) -> np.ndarray:
    """(1 - alpha) base + alpha update; alpha = 1 returns update unchanged."""
    if relaxation == 1.0:
        return update
    return (1.0 - relaxation) * base + relaxation * update
