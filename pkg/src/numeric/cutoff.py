"""
Logarithmic cut-off functions and their horizontal derivatives
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
import sympy as sp

from src.algebra.group import coordinate_symbols, gauge_polynomial, homogeneous_norm_exponent, left_invariant_fields
from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.errors import NonpositiveLambda, ValidationError
from src.numeric.gauge import gauge_eval


@dataclass(frozen=True)
class Cutoff:
    """xi = 1 on B(R), log(lam R / r) / log(lam) on the shell, 0 outside B(lam R)"""
    R: float
    lam: float

    def __post_init__(self):
        if self.R <= 0:
            raise ValidationError(f"Cut-off radius must be positive, got {self.R}")
        if self.lam <= 1:
            raise NonpositiveLambda(f"Cut-off ratio must exceed 1, got {self.lam}")

    @property
    def outer(self) -> float:
        return self.lam * self.R

    def profile(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        with np.errstate(divide='ignore'):
            value = np.log(self.outer / r) / np.log(self.lam)
        return np.clip(value, 0.0, 1.0)

    def in_shell(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return (r >= self.R) & (r <= self.outer)


def cutoff_eval(g: StratifiedLieAlgebra, R: float, lam: float, x) -> np.ndarray:
    return Cutoff(R, lam).profile(gauge_eval(g, x))


@lru_cache(maxsize=None)
def log_gauge_derivatives(g: StratifiedLieAlgebra, m: int) -> sp.Expr:
    """
    |G_m| with G_m = -(1/2N) W_i1 .. W_im log P over horizontal multi-indices.

    On the shell the m-th horizontal derivative of the cut-off is G_m / log(lam).
    """
    if m < 1:
        raise ValidationError(f"Derivative order must be positive, got {m}")
    fields = left_invariant_fields(g)
    N = homogeneous_norm_exponent(g)
    base = -sp.log(gauge_polynomial(g).as_expr()) / (2 * N)
    derivatives = [base]
    for _ in range(m):
        derivatives = [sp.together(fields[i].apply_expr(expr)) for expr in derivatives for i in g.horizontal]
    return sp.sqrt(sum(expr ** 2 for expr in derivatives))


@lru_cache(maxsize=None)
def derivative_norm_function(g: StratifiedLieAlgebra, m: int) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised |G_m| on arrays of shape (samples, n)"""
    gens = coordinate_symbols(g.n)
    compiled = sp.lambdify(gens, log_gauge_derivatives(g, m), modules='numpy')

    def evaluate(points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(points)
        return np.broadcast_to(compiled(*points.T), points.shape[:1]).astype(float)

    return evaluate


def cutoff_derivative_norm(g: StratifiedLieAlgebra, cutoff: Cutoff, m: int, x) -> np.ndarray:
    """|nabla^m xi|, supported in the closed shell"""
    points = np.atleast_2d(np.asarray(x, dtype=float))
    r = gauge_eval(g, points)
    values = derivative_norm_function(g, m)(points) / np.log(cutoff.lam)
    return np.where(cutoff.in_shell(r), values, 0.0)
