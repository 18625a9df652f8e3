"""
Homogeneous gauge and numeric dilations
"""
import numpy as np

from src.algebra.group import homogeneous_norm_exponent
from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.errors import DimensionMismatch, NonpositiveLambda


def layer_weights(g: StratifiedLieAlgebra) -> np.ndarray:
    return np.asarray(g.layers, dtype=float)


def _as_points(g: StratifiedLieAlgebra, x) -> np.ndarray:
    points = np.atleast_2d(np.asarray(x, dtype=float))
    if points.shape[-1] != g.n:
        raise DimensionMismatch(f"Points have {points.shape[-1]} coordinates, {g.name} has dimension {g.n}")
    return points


def gauge_power(g: StratifiedLieAlgebra, x) -> np.ndarray:
    """P(x) = r(x)^(2N)"""
    points = _as_points(g, x)
    N = homogeneous_norm_exponent(g)
    total = np.zeros(points.shape[0])
    for s in range(1, g.step + 1):
        block = points[:, list(g.layer_indices(s))]
        total += np.sum(block * block, axis=1) ** (N // s)
    return total


def gauge_eval(g: StratifiedLieAlgebra, x) -> np.ndarray:
    """r(x) = (sum_s |x^(s)|^(2N/s))^(1/(2N)); a scalar for a single point"""
    N = homogeneous_norm_exponent(g)
    r = gauge_power(g, x) ** (1.0 / (2 * N))
    return r[0] if np.ndim(x) == 1 else r


def dilate_points(g: StratifiedLieAlgebra, lam, x) -> np.ndarray:
    """delta_lambda on an array of points; lam may be one factor per point"""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise NonpositiveLambda("Dilation factors must be positive")
    points = _as_points(g, x)
    return points * np.power(lam.reshape(-1, 1), layer_weights(g))
