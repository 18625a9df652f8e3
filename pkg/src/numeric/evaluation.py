"""
Numeric evaluation of polynomial and profile forms
"""
from typing import Callable, Dict, Optional

import numpy as np
import sympy as sp

from src.algebra.group import homogeneous_norm_exponent
from src.calculus.polyform import PolyForm, ProfileRing
from src.errors import ValidationError
from src.forms.exterior import Multi, multi_weight
from src.numeric.gauge import dilate_points, gauge_power
from src.numeric.profiles import Profile


class FormEvaluator:
    """
    Evaluates the coefficients of a PolyForm on arrays of points.

    Forms over a ProfileRing need a profile b and a scale: u_j becomes
    b^(j)(P/s) / s^j with s = scale^(2N).
    """

    def __init__(self, form: PolyForm, profile: Optional[Profile] = None, scale: float = 1.0):
        self.form = form
        self.algebra = form.ring.algebra
        self.profile = profile
        self.scale = float(scale)
        if isinstance(form.ring, ProfileRing) and profile is None:
            raise ValidationError("A profile form needs a profile to be evaluated")
        gens = form.ring.gens
        self._compiled: Dict[Multi, Callable] = {
            J: sp.lambdify(gens, f.as_expr(), modules='numpy') for J, f in form.terms
        }

    def _arguments(self, points: np.ndarray):
        columns = [points[:, i] for i in range(self.algebra.n)]
        ring = self.form.ring
        if isinstance(ring, ProfileRing):
            s = self.scale ** (2 * homogeneous_norm_exponent(self.algebra))
            t = gauge_power(self.algebra, points) / s
            columns += [self.profile.derivative(j)(t) / s ** j for j in range(ring.depth + 1)]
        return columns

    def coefficients(self, points: np.ndarray, dilation: float = 1.0) -> Dict[Multi, np.ndarray]:
        """
        Coefficients of the form, or of its pullback by delta_dilation:
        a_J(delta_R x) R^w(J).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if dilation != 1.0:
            points = dilate_points(self.algebra, np.full(points.shape[0], dilation), points)
        arguments = self._arguments(points)
        values = {}
        for J, compiled in self._compiled.items():
            factor = dilation ** multi_weight(self.algebra, J)
            values[J] = factor * np.broadcast_to(compiled(*arguments), points.shape[:1]).astype(float)
        return values

    def pointwise_norm(self, points: np.ndarray, dilation: float = 1.0) -> np.ndarray:
        """Euclidean norm of the coefficients in the orthonormal coframe"""
        points = np.atleast_2d(points)
        total = np.zeros(points.shape[0])
        for values in self.coefficients(points, dilation).values():
            total += values * values
        return np.sqrt(total)

    def density(self, points: np.ndarray) -> np.ndarray:
        """Coefficient of the volume form; the form must have top degree"""
        if self.form.degree != self.algebra.n:
            raise ValidationError(f"Density needs an {self.algebra.n}-form, got degree {self.form.degree}")
        points = np.atleast_2d(points)
        return self.coefficients(points).get(tuple(range(self.algebra.n)), np.zeros(points.shape[0]))
