"""
rumin-calc: exact Rumin complex calculus on Carnot groups
"""
__version__ = "1.0.0"
__description__ = "Rumin complexes, weight data and averaging-pairing experiments on Carnot groups"
