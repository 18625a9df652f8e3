"""
Polynomial-coefficient Rumin calculus
"""
from src.calculus.polyform import CoordinateRing, PolyForm, ProfileRing
from src.calculus.differential import dc_apply, dc_pieces, de_rham_d, pi_E, pi_E0
from src.calculus.heisenberg import ideal_dc
from src.calculus.jsets import jset_scan, jset_table, q_exponent
from src.calculus.leibniz import leibniz_check, rumin_wedge
from src.calculus.primitives import homogeneous_primitive, linear_growth_primitive

__all__ = [
    'CoordinateRing', 'PolyForm', 'ProfileRing',
    'dc_apply', 'dc_pieces', 'de_rham_d', 'pi_E', 'pi_E0', 'ideal_dc',
    'jset_scan', 'jset_table', 'q_exponent', 'leibniz_check', 'rumin_wedge',
    'homogeneous_primitive', 'linear_growth_primitive',
]
