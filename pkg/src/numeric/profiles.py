"""
Radial profiles b(t), evaluated at t = P / s with P the gauge polynomial
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
import sympy as sp

from src.errors import ValidationError

t = sp.Symbol('t', nonnegative=True)


@dataclass(frozen=True)
class Profile:
    """A smooth function of t >= 0; support=1 means it vanishes for t >= 1"""
    name: str
    expr: sp.Expr
    support: Optional[float] = None

    @lru_cache(maxsize=None)
    def derivative(self, j: int) -> Callable[[np.ndarray], np.ndarray]:
        """Vectorised b^(j)"""
        compiled = sp.lambdify(t, sp.diff(self.expr, t, j), modules='numpy')
        support = self.support

        def evaluate(values: np.ndarray) -> np.ndarray:
            values = np.asarray(values, dtype=float)
            if support is None:
                return np.broadcast_to(compiled(values), values.shape).astype(float)
            inside = values < support
            safe = np.where(inside, values, 0.0)
            with np.errstate(all='ignore'):
                result = np.broadcast_to(compiled(safe), values.shape).astype(float)
            return np.where(inside, result, 0.0)

        return evaluate


def bump_profile() -> Profile:
    """exp(1 - 1/(1 - t)) on [0, 1), smooth and compactly supported"""
    return Profile('bump', sp.exp(1 - 1 / (1 - t)), support=1.0)


def gaussian_profile() -> Profile:
    return Profile('gaussian', sp.exp(-t))


def power_profile(exponent=sp.Rational(7, 8)) -> Profile:
    """(1 + t)^(-s)"""
    return Profile(f'power:{exponent}', (1 + t) ** (-sp.Rational(exponent)))


def get_profile(name: str, exponent=None) -> Profile:
    if name == 'bump':
        return bump_profile()
    if name == 'gaussian':
        return gaussian_profile()
    if name == 'power':
        return power_profile() if exponent is None else power_profile(exponent)
    raise ValidationError(f"Unknown profile: {name}. Expected bump, gaussian or power")
