"""
Rumin's differential on Heisenberg groups built from the contact ideal
"""
from functools import lru_cache
from typing import Dict, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.calculus.differential import apply_invariant_operator, de_rham_d, is_rumin
from src.calculus.polyform import PolyForm
from src.errors import NotRumin
from src.forms.exterior import Multi, basis
from src.forms.invariant import d0, wedge_matrix
from src.forms.linalg import column_projector, pseudo_inverse
from src.forms.rumin import contact_form, ideal_generators, require_heisenberg


@lru_cache(maxsize=None)
def ideal_complement_projector(g: StratifiedLieAlgebra, h: int) -> sp.ImmutableMatrix:
    """Orthogonal projector of Lambda^h onto the complement of I^h"""
    size = len(basis(g.n, h))
    spanning = sp.Matrix(ideal_generators(g, h))
    if spanning.cols == 0:
        return sp.ImmutableMatrix(sp.eye(size))
    return sp.ImmutableMatrix(sp.eye(size) - column_projector(spanning))


def _horizontal_positions(g: StratifiedLieAlgebra, k: int) -> Tuple[int, ...]:
    vertical = g.n - 1
    return tuple(p for p, J in enumerate(basis(g.n, k)) if vertical not in J)


@lru_cache(maxsize=None)
def lefschetz_inverse(g: StratifiedLieAlgebra, m: int) -> sp.ImmutableMatrix:
    """Inverse of gamma -> d tau ^ gamma from horizontal (m-1)-forms to horizontal (m+1)-forms"""
    dtau = d0(g, contact_form(g))
    full = wedge_matrix(g, dtau, m - 1)
    rows = list(_horizontal_positions(g, m + 1))
    cols = list(_horizontal_positions(g, m - 1))
    return sp.ImmutableMatrix(pseudo_inverse(full.extract(rows, cols)))


def ideal_dc(g: StratifiedLieAlgebra, a: PolyForm) -> PolyForm:
    """
    d_c through the contact ideal:

    - below the middle degree, d a modulo I^(h+1);
    - in the middle degree m, d(a - tau ^ gamma) where d tau ^ gamma
      cancels the horizontal part of d a;
    - above the middle degree, d a itself.
    """
    m = require_heisenberg(g)
    if not is_rumin(g, a):
        raise NotRumin(f"Form is not fixed by the E0 projector: {a.to_text()}")
    h = a.degree
    da = de_rham_d(g, a)
    if h < m:
        return apply_invariant_operator(da, ideal_complement_projector(g, h + 1), h + 1)
    if h > m:
        return da

    vertical = g.n - 1
    targets = basis(g.n, m + 1)
    sources = basis(g.n, m - 1)
    rows = _horizontal_positions(g, m + 1)
    cols = _horizontal_positions(g, m - 1)
    inverse = lefschetz_inverse(g, m)
    horizontal = {J: f for J, f in da.terms if vertical not in J}

    gamma: Dict[Multi, sp.Poly] = {}
    for c_index, column in enumerate(cols):
        total = a.ring.zero()
        for r_index, row in enumerate(rows):
            weight = inverse[c_index, r_index]
            f = horizontal.get(targets[row])
            if weight != 0 and f is not None:
                total += f * weight
        gamma[sources[column]] = total
    correction = PolyForm.from_invariant(a.ring, contact_form(g)).wedge(PolyForm.from_dict(a.ring, m - 1, gamma))
    return de_rham_d(g, a - correction)
