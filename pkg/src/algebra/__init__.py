"""
Carnot algebras, the group law and left-invariant fields
"""
from src.algebra.lie_algebra import StratifiedLieAlgebra, builtin_group, load_group, parse_group
from src.algebra.group import (
    GroupPoint,
    VectorField,
    bch_multiply,
    coordinate_symbols,
    dilate,
    gauge_polynomial,
    left_invariant_fields,
)

__all__ = [
    'StratifiedLieAlgebra', 'builtin_group', 'load_group', 'parse_group',
    'GroupPoint', 'VectorField', 'bch_multiply', 'coordinate_symbols', 'dilate',
    'gauge_polynomial', 'left_invariant_fields',
]
