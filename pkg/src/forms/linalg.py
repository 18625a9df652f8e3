"""
Exact rational linear algebra helpers
"""
from typing import List, Optional, Sequence

import sympy as sp


def pseudo_inverse(matrix: sp.Matrix) -> sp.Matrix:
    """Moore-Penrose pseudoinverse over the rationals (rank decomposition)"""
    if matrix.rows == 0 or matrix.cols == 0 or matrix.is_zero_matrix:
        return sp.zeros(matrix.cols, matrix.rows)
    return sp.ImmutableMatrix(matrix.pinv(method='RD'))


def gram_schmidt(vectors: Sequence[sp.Matrix]) -> List[sp.Matrix]:
    """Orthogonal, not normalized; no square roots are introduced"""
    if not vectors:
        return []
    return [sp.ImmutableMatrix(v) for v in sp.GramSchmidt(list(vectors), orthonormal=False)]


def nullspace(matrix: sp.Matrix) -> List[sp.Matrix]:
    if matrix.rows == 0:
        return [sp.eye(matrix.cols)[:, i] for i in range(matrix.cols)]
    return matrix.nullspace()


def rank(matrix: sp.Matrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return matrix.rank()


def solve_min_support(matrix: sp.Matrix, rhs: sp.Matrix) -> Optional[sp.Matrix]:
    """
    Solve matrix * v = rhs exactly; free variables are set to zero.

    Returns None when the system is inconsistent. The column order of
    `matrix` decides which variables become pivots.
    """
    unknowns = matrix.cols
    if unknowns == 0:
        return sp.zeros(0, 1) if rhs.is_zero_matrix else None
    reduced, pivots = matrix.row_join(rhs).rref()
    if unknowns in pivots:
        return None
    solution = sp.zeros(unknowns, 1)
    for row, column in enumerate(pivots):
        solution[column] = reduced[row, unknowns]
    return solution


def column_projector(columns: sp.Matrix) -> sp.Matrix:
    """Orthogonal projector onto the column span"""
    return columns * pseudo_inverse(columns)
