"""Symmetric solves against innovation matrices"""

import logging

import numpy as np
import scipy.linalg

from utils import LinearAlgebraError

logger = logging.getLogger("menkf_app")

JITTER = 1e-12


def solve_innovation(innovation: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Returns S^-1 rhs for the symmetric innovation matrix S.

    A Cholesky factorization is attempted first; on failure it is retried once
    with 1e-12 * trace(S) added to the diagonal.
    """
    try:
        factor = scipy.linalg.cho_factor(innovation, lower=True, check_finite=True)
    except (np.linalg.LinAlgError, ValueError):
        jitter = JITTER * float(np.trace(innovation))
        logger.debug(f"SERVICE: innovation factorization failed, retrying with jitter {jitter:.3e}")
        try:
            if not jitter > 0.0:
                raise np.linalg.LinAlgError("zero trace")
            shifted = innovation + jitter * np.eye(innovation.shape[0])
            factor = scipy.linalg.cho_factor(shifted, lower=True, check_finite=True)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise LinearAlgebraError(
                context={"n_obs": int(innovation.shape[0]), "trace": float(np.trace(innovation))}
            ) from e
    return scipy.linalg.cho_solve(factor, rhs)
