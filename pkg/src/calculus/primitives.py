"""
Homogeneous primitives of left-invariant Rumin forms
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.calculus.differential import dc_apply, is_rumin
from src.calculus.polyform import CoordinateRing, PolyForm, monomial_poly, monomials_of_homogeneity
from src.errors import NoLinearGrowth, NotClosed, NotRumin
from src.forms.exterior import InvariantForm
from src.forms.linalg import solve_min_support
from src.forms.rumin import rumin_basis
from src.utils.logger import CalcLogger


@dataclass(frozen=True)
class PrimitiveResult:
    primitive: PolyForm
    growth: int


def _prepare(g: StratifiedLieAlgebra, beta: InvariantForm) -> Tuple[CoordinateRing, PolyForm]:
    ring = CoordinateRing(g)
    target = PolyForm.from_invariant(ring, beta)
    if not is_rumin(g, target):
        raise NotRumin(f"Form is not a Rumin form: {beta.to_text()}")
    if not dc_apply(g, target).is_zero():
        raise NotClosed(f"d_c of {beta.to_text()} does not vanish")
    return ring, target


def _solve(g: StratifiedLieAlgebra, ring: CoordinateRing, target: PolyForm,
           ansatz: List[PolyForm]) -> Optional[PolyForm]:
    """Minimal-support combination of the ansatz whose d_c equals the target"""
    if not ansatz:
        return None
    images = [dc_apply(g, form) for form in ansatz]
    keys: Dict[tuple, int] = {}
    for image in [target] + images:
        for key, _ in image.items():
            keys.setdefault(key, len(keys))
    matrix = sp.zeros(len(keys), len(ansatz))
    for column, image in enumerate(images):
        for key, c in image.items():
            matrix[keys[key], column] = c
    rhs = sp.zeros(len(keys), 1)
    for key, c in target.items():
        rhs[keys[key]] = c
    solution = solve_min_support(matrix, rhs)
    if solution is None:
        return None
    total = PolyForm.zero(ring, target.degree - 1)
    for coefficient, form in zip(solution, ansatz):
        if coefficient != 0:
            total = total + form.scale(coefficient)
    return total


def _ansatz(g: StratifiedLieAlgebra, ring: CoordinateRing, beta: InvariantForm,
            max_growth: int) -> List[PolyForm]:
    """E0^(h-1) basis elements of weight w' times monomials of homogeneity w - w' in 1..max_growth"""
    space = rumin_basis(g, beta.degree - 1)
    ansatz = []
    for w in beta.weights(g):
        for element, w_prime in zip(space.basis, space.basis_weights):
            growth = w - w_prime
            if not 1 <= growth <= max_growth:
                continue
            for alpha in monomials_of_homogeneity(g, growth):
                ansatz.append(PolyForm.from_invariant(ring, element, monomial_poly(ring, alpha)))
    return ansatz


def homogeneous_primitive(g: StratifiedLieAlgebra, beta: InvariantForm,
                          max_growth: Optional[int] = None) -> PrimitiveResult:
    """
    Primitive alpha with d_c alpha = beta over the homogeneous ansatz,
    using the smallest coefficient growth that admits one.
    """
    ring, target = _prepare(g, beta)
    top = max(beta.weights(g), default=0) if max_growth is None else max_growth
    for growth in range(1, top + 1):
        primitive = _solve(g, ring, target, _ansatz(g, ring, beta, growth))
        if primitive is not None:
            return PrimitiveResult(primitive, primitive.coefficient_growth())
    raise NoLinearGrowth(f"No homogeneous primitive of {beta.to_text()} with growth up to {top}")


def linear_growth_primitive(g: StratifiedLieAlgebra, beta: InvariantForm) -> PolyForm:
    """Primitive with coefficients linear in the horizontal coordinates"""
    logger = CalcLogger()
    logger.log_operation('linear_growth_primitive', group=g.name, beta=beta.to_text())
    ring, target = _prepare(g, beta)
    primitive = _solve(g, ring, target, _ansatz(g, ring, beta, 1))
    if primitive is not None:
        logger.log_result('linear_growth_primitive', group=g.name, primitive=primitive.to_text())
        return primitive

    try:
        minimal = homogeneous_primitive(g, beta).growth
    except NoLinearGrowth:
        minimal = None
    message = f"{beta.to_text()} has no primitive of linear growth"
    if minimal is not None:
        message += f" (smallest homogeneous primitive grows with degree {minimal})"
    raise NoLinearGrowth(message, minimal_growth=minimal)
