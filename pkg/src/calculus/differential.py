"""
Exterior differential, Rumin projectors and the Rumin differential d_c
"""
from functools import lru_cache
from typing import Dict, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.calculus.polyform import PolyForm
from src.errors import DimensionMismatch, NoConvergence, NotRumin
from src.forms.exterior import Multi, basis, basis_position, sort_sign
from src.forms.invariant import d0_matrix, d0_pinv, pi_E0_matrix

SparseColumns = Tuple[Tuple[Tuple[int, sp.Rational], ...], ...]


@lru_cache(maxsize=None)
def _sparse_columns(matrix: sp.ImmutableMatrix) -> SparseColumns:
    return tuple(
        tuple((row, matrix[row, column]) for row in range(matrix.rows) if matrix[row, column] != 0)
        for column in range(matrix.cols)
    )


def apply_invariant_operator(a: PolyForm, matrix: sp.ImmutableMatrix, degree: int) -> PolyForm:
    """Apply a constant-coefficient operator Lambda^k -> Lambda^degree coefficient-wise"""
    n = a.ring.algebra.n
    if a.is_zero() or not 0 <= degree <= n or not 0 <= a.degree <= n:
        return PolyForm.zero(a.ring, degree)
    source = basis_position(n, a.degree)
    target = basis(n, degree)
    columns = _sparse_columns(matrix)
    total: Dict[Multi, sp.Poly] = {}
    for J, f in a.terms:
        for row, c in columns[source[J]]:
            K = target[row]
            total[K] = total[K] + f * c if K in total else f * c
    return PolyForm.from_dict(a.ring, degree, total)


def _check_ring(g: StratifiedLieAlgebra, a: PolyForm):
    if a.ring.algebra != g:
        raise DimensionMismatch(f"Form is defined over {a.ring.algebra.name}, not {g.name}")


def horizontal_delta(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """delta(f theta^J) = sum_i (X_i f) theta^i ^ theta^J"""
    total: Dict[Multi, sp.Poly] = {}
    for J, f in a.terms:
        for i in range(g.n):
            derivative = a.ring.apply_field(i, f)
            if derivative.is_zero:
                continue
            sign, K = sort_sign((i,) + J)
            if sign:
                term = derivative if sign > 0 else -derivative
                total[K] = total[K] + term if K in total else term
    return PolyForm.from_dict(a.ring, a.degree + 1, total)


def d0_poly(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """d0 applied coefficient-wise"""
    return apply_invariant_operator(a, d0_matrix(g, a.degree), a.degree + 1)


def de_rham_d(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """d = delta + d0 in the left-invariant coframe"""
    _check_ring(g, a)
    if a.degree < 0:
        return PolyForm.zero(a.ring, a.degree + 1)
    return horizontal_delta(g, a) + d0_poly(g, a)


def homotopy(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """d0^-1 applied coefficient-wise"""
    if a.degree < 1 or a.degree > g.n:
        return PolyForm.zero(a.ring, a.degree - 1)
    return apply_invariant_operator(a, d0_pinv(g, a.degree), a.degree - 1)


def pi_E0(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """1 - d0 d0^-1 - d0^-1 d0, pointwise"""
    _check_ring(g, a)
    if not 0 <= a.degree <= g.n:
        return PolyForm.zero(a.ring, a.degree)
    return apply_invariant_operator(a, pi_E0_matrix(g, a.degree), a.degree)


def rumin_homotopy(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """
    Q = sum_i (-d0^-1 delta)^i d0^-1.

    Every step raises form weight by at least one, so the series stops
    after at most Q terms.
    """
    term = homotopy(g, a)
    total = term
    steps = 0
    while not term.is_zero():
        steps += 1
        if steps > g.Q + 1:
            raise NoConvergence(f"Homotopy series did not terminate after {steps} steps on {g.name}")
        term = -homotopy(g, horizontal_delta(g, term))
        total = total + term
    return total


def pi_E(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """1 - Q d - d Q"""
    _check_ring(g, a)
    return a - rumin_homotopy(g, de_rham_d(g, a)) - de_rham_d(g, rumin_homotopy(g, a))


def is_rumin(g: StratifiedLieAlgebra, a: PolyForm) -> bool:
    return pi_E0(g, a) == a


def dc_apply(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """d_c = pi_E0 d pi_E on E0-valued forms"""
    _check_ring(g, a)
    if not is_rumin(g, a):
        raise NotRumin(f"Form is not fixed by the E0 projector: {a.to_text()}")
    return pi_E0(g, de_rham_d(g, pi_E(g, a)))


def dc_pieces(g: StratifiedLieAlgebra, a: PolyForm) -> Dict[int, PolyForm]:
    """Decomposition d_c = sum_j d_(c,j) by the weight raise j"""
    pieces: Dict[int, PolyForm] = {}
    for w, component in a.weight_components().items():
        for w_out, image in dc_apply(g, component).weight_components().items():
            j = w_out - w
            pieces[j] = pieces[j] + image if j in pieces else image
    return dict(sorted(pieces.items()))
