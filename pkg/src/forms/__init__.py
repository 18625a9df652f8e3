"""
Left-invariant forms, d0 and the Rumin spaces E0
"""
from src.forms.exterior import InvariantForm, hodge_star, volume_form, wedge
from src.forms.invariant import adjoint_d0, betti_numbers, d0, d0_pinv
from src.forms.rumin import (
    RuminSpace,
    annihilator_check,
    heisenberg_ideal_dims,
    rumin_basis,
    weights_table,
)

__all__ = [
    'InvariantForm', 'hodge_star', 'volume_form', 'wedge',
    'adjoint_d0', 'betti_numbers', 'd0', 'd0_pinv',
    'RuminSpace', 'annihilator_check', 'heisenberg_ideal_dims', 'rumin_basis', 'weights_table',
]
