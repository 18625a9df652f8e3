"""
Floating-point verification harness: gauge, cut-offs, shell Monte Carlo and experiments
"""
from src.numeric.cutoff import Cutoff, cutoff_eval
from src.numeric.experiments import (
    ExperimentReport,
    cutoff_norm_experiment,
    pairing_experiment,
    scaling_exponent_experiment,
)
from src.numeric.gauge import gauge_eval
from src.numeric.sampling import ShellEstimate, shell_integral

__all__ = [
    'Cutoff', 'cutoff_eval', 'ExperimentReport', 'cutoff_norm_experiment', 'pairing_experiment',
    'scaling_exponent_experiment', 'gauge_eval', 'ShellEstimate', 'shell_integral',
]
