from .operators import DOp, NABLA, NABLA_BAR, compose, commutator
from .parabolic import (quantum_fields, structure_Phat, structure_Qhat, reduce_mod_left_ideal,
                        traceless_constant, traceless_mu1, a2_columns, a2_consistency, parabolic_curvature,
                        curvature_semiclassical, confluence_defect, hamiltonian_hat, gauge_vary,
                        semiclassical_variation)

__all__ = [
    'DOp', 'NABLA', 'NABLA_BAR', 'compose', 'commutator',
    'quantum_fields', 'structure_Phat', 'structure_Qhat', 'reduce_mod_left_ideal',
    'traceless_constant', 'traceless_mu1', 'a2_columns', 'a2_consistency', 'parabolic_curvature',
    'curvature_semiclassical', 'confluence_defect', 'hamiltonian_hat', 'gauge_vary',
    'semiclassical_variation'
]
