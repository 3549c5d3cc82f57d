"""
Order-statistic helpers shared by the VaR and location-quantile estimators.
"""

import math

import numpy as np

from innovrisk.exceptions import NonFiniteError, ValidationError

# Guards floor() against binary rounding, e.g. 10 * (1 - 0.9) = 0.9999999999999998
FLOOR_GUARD = 1e-9


def safe_floor(x: float) -> int:
    return int(math.floor(x + FLOOR_GUARD))


def check_level(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"alpha must lie in (0, 1), got {alpha}")
    return float(alpha)


def as_sample(values: np.ndarray | list[float], what: str = "sample") -> np.ndarray:
    sample = np.asarray(values, dtype=float).reshape(-1)
    if sample.size == 0:
        raise ValidationError(f"{what} is empty")
    bad = np.flatnonzero(~np.isfinite(sample))
    if bad.size:
        raise NonFiniteError(what, int(bad[0]))
    return sample


def order_index(n: int, alpha: float) -> int:
    """k = max(1, floor(n * alpha)), the 1-based order statistic used for VaR."""
    return max(1, safe_floor(n * alpha))


def kth_smallest(sample: np.ndarray, k: int) -> float:
    return float(np.partition(sample, k - 1)[k - 1])
