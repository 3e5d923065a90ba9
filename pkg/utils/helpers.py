import hashlib

import numpy as np

# Seventeen significant digits make every float64 round-trip exactly.
FLOAT_FORMAT = "%.17g"


def hash_text(text: str, length=16):
    """
    Helper function that returns a short stable sha256 digest of a text.
    """
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:length]


def second_difference_energy(values) -> float:
    """Sum of squared second differences along the last axis, summed over everything else."""
    values = np.asarray(values, dtype=float)
    if values.shape[-1] < 3:
        return 0.0
    d2 = values[..., 2:] - 2.0 * values[..., 1:-1] + values[..., :-2]
    return float(np.sum(d2 * d2))
