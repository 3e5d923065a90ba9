"""Centered sixth-order selective filter with reduced-order stencils near the ends"""

import numpy as np

from utils import ContractError

# Standard centered 7-point damping stencil; annihilates polynomials up to degree 5
FILTER_STENCIL = np.array([-1.0, 6.0, -15.0, 20.0, -15.0, 6.0, -1.0]) / 64.0
HALF_WIDTH = 3

# Centered second- and fourth-order stencils for the nodes the 7-point one cannot reach.
# Like the interior stencil they remove the odd-even mode at full strength.
BOUNDARY_STENCILS = {
    1: np.array([-1.0, 2.0, -1.0]) / 4.0,
    2: np.array([1.0, -4.0, 6.0, -4.0, 1.0]) / 16.0,
}


def _stencil_increment(values: np.ndarray, stencil: np.ndarray, first: int, last: int) -> np.ndarray:
    """Stencil applied to nodes first..last-1 along the last axis."""
    half = len(stencil) // 2
    increment = np.zeros(values.shape[:-1] + (last - first,))
    for j, d in enumerate(stencil):
        lo = first - half + j
        increment += d * values[..., lo : lo + last - first]
    return increment


def sixth_order_filter(values, strength: float) -> np.ndarray:
    """Filter along the last axis.

    Nodes 3..n-4 get the 7-point stencil, nodes 1, 2 and their mirrors get the
    lower-order ones; the two end nodes are left untouched.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[-1]
    if n < 2 * HALF_WIDTH + 1:
        raise ContractError(
            f"sixth-order filter needs at least 7 points, got {n}",
            context={"length": n},
        )
    if not 0.0 <= strength <= 1.0:
        raise ContractError(f"filter strength must be in [0, 1], got {strength}")
    out = values.copy()
    if strength == 0.0:
        return out
    out[..., HALF_WIDTH : n - HALF_WIDTH] -= strength * _stencil_increment(
        values, FILTER_STENCIL, HALF_WIDTH, n - HALF_WIDTH
    )
    for node, stencil in BOUNDARY_STENCILS.items():
        for index in (node, n - 1 - node):
            out[..., index] -= strength * _stencil_increment(values, stencil, index, index + 1)[..., 0]
    return out
