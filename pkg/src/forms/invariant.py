"""
The algebraic differential d0 on left-invariant forms and its companions
"""
from functools import lru_cache
from typing import Dict, List, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.errors import DimensionMismatch, ValidationError
from src.forms.exterior import InvariantForm, Multi, basis, basis_position, sort_sign
from src.forms.linalg import pseudo_inverse, rank


@lru_cache(maxsize=None)
def d0_covector(g: StratifiedLieAlgebra, k: int) -> Dict[Multi, sp.Rational]:
    """d0 theta^k = -sum_{i<j} c^k_ij theta^i ^ theta^j"""
    return {(i, j): -c for i, j, target, c in g.brackets if target == k}


@lru_cache(maxsize=None)
def d0_monomial(g: StratifiedLieAlgebra, J: Multi) -> Dict[Multi, sp.Rational]:
    """d0 theta^J as an anti-derivation"""
    total: Dict[Multi, sp.Rational] = {}
    for position, j in enumerate(J):
        sign = -1 if position % 2 else 1
        for pair, c in d0_covector(g, j).items():
            flipped, K = sort_sign(J[:position] + pair + J[position + 1:])
            if flipped:
                total[K] = total.get(K, sp.Integer(0)) + sign * flipped * c
    return {K: c for K, c in total.items() if c != 0}


@lru_cache(maxsize=None)
def d0_matrix(g: StratifiedLieAlgebra, k: int) -> sp.ImmutableMatrix:
    """Matrix of d0: Lambda^k -> Lambda^(k+1) in the lexicographic bases"""
    rows, cols = len(basis(g.n, k + 1)), len(basis(g.n, k))
    matrix = sp.zeros(rows, cols)
    positions = basis_position(g.n, k + 1)
    for column, J in enumerate(basis(g.n, k)):
        for K, c in d0_monomial(g, J).items():
            matrix[positions[K], column] = c
    return sp.ImmutableMatrix(matrix)


def _check_form(g: StratifiedLieAlgebra, a: InvariantForm):
    if a.n != g.n:
        raise DimensionMismatch(f"Form has dimension {a.n}, {g.name} has {g.n}")


def d0(g: StratifiedLieAlgebra, a: InvariantForm) -> InvariantForm:
    """Chevalley-Eilenberg differential; preserves weight"""
    _check_form(g, a)
    if a.degree >= g.n:
        return InvariantForm(g.n, g.n)
    total: Dict[Multi, sp.Rational] = {}
    for J, c in a.terms:
        for K, v in d0_monomial(g, J).items():
            total[K] = total.get(K, sp.Integer(0)) + c * v
    return InvariantForm.from_dict(g.n, a.degree + 1, total)


def _check_degree(g: StratifiedLieAlgebra, k: int, low: int = 0):
    if not low <= k <= g.n:
        raise ValidationError(f"Degree {k} outside {low}..{g.n}")


@lru_cache(maxsize=None)
def d0_pinv(g: StratifiedLieAlgebra, k: int) -> sp.ImmutableMatrix:
    """Pseudoinverse of d0 from degree k-1 to k, as a map Lambda^k -> Lambda^(k-1)"""
    _check_degree(g, k, low=1)
    return sp.ImmutableMatrix(pseudo_inverse(sp.Matrix(d0_matrix(g, k - 1))))


@lru_cache(maxsize=None)
def adjoint_d0(g: StratifiedLieAlgebra, k: int) -> sp.ImmutableMatrix:
    """Transpose of d0 into degree k, as a map Lambda^k -> Lambda^(k-1)"""
    _check_degree(g, k)
    return d0_matrix(g, k - 1).T


def apply_matrix(matrix: sp.Matrix, a: InvariantForm, degree: int) -> InvariantForm:
    """Apply a matrix acting on coordinate vectors to an invariant form"""
    if matrix.cols != len(basis(a.n, a.degree)):
        raise DimensionMismatch(f"Operator expects {matrix.cols} coordinates, form has {len(basis(a.n, a.degree))}")
    return InvariantForm.from_vector(a.n, degree, list(matrix * a.vector()))


def d0_inverse(g: StratifiedLieAlgebra, a: InvariantForm) -> InvariantForm:
    """d0^-1 applied to a form of degree >= 1"""
    _check_form(g, a)
    return apply_matrix(d0_pinv(g, a.degree), a, a.degree - 1)


def d0_adjoint(g: StratifiedLieAlgebra, a: InvariantForm) -> InvariantForm:
    _check_form(g, a)
    if a.degree == 0:
        return InvariantForm(g.n, 0)
    return apply_matrix(adjoint_d0(g, a.degree), a, a.degree - 1)


@lru_cache(maxsize=None)
def pi_E0_matrix(g: StratifiedLieAlgebra, k: int) -> sp.ImmutableMatrix:
    """1 - d0 d0^-1 - d0^-1 d0 on Lambda^k"""
    _check_degree(g, k)
    size = len(basis(g.n, k))
    projector = sp.eye(size)
    if k >= 1:
        projector -= d0_matrix(g, k - 1) * d0_pinv(g, k)
    if k < g.n:
        projector -= d0_pinv(g, k + 1) * d0_matrix(g, k)
    return sp.ImmutableMatrix(projector)


@lru_cache(maxsize=None)
def betti_numbers(g: StratifiedLieAlgebra) -> Tuple[int, ...]:
    """dim H^k(g) = dim ker d0|_k - rank d0|_(k-1), for k = 0..n"""
    ranks = [rank(sp.Matrix(d0_matrix(g, k))) for k in range(g.n + 1)]
    return tuple(len(basis(g.n, k)) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(g.n + 1))


def wedge_matrix(g: StratifiedLieAlgebra, gamma: InvariantForm, k: int) -> sp.Matrix:
    """Matrix of beta -> beta ^ gamma from Lambda^k"""
    target = k + gamma.degree
    rows, cols = len(basis(g.n, target)), len(basis(g.n, k))
    matrix = sp.zeros(rows, cols)
    if target > g.n:
        return matrix
    positions = basis_position(g.n, target)
    for column, J in enumerate(basis(g.n, k)):
        for I, c in gamma.terms:
            sign, K = sort_sign(J + I)
            if sign:
                matrix[positions[K], column] += sign * c
    return matrix


def coframe(g: StratifiedLieAlgebra) -> List[InvariantForm]:
    """theta^1 .. theta^n"""
    return [InvariantForm.monomial(g.n, (i,)) for i in range(g.n)]
