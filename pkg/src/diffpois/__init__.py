from .symbols import (P, PBAR, jet, jet_info, field, fields, D, Dbar, Dn, truncate_t2,
                      truncate_derivatives, derivative_weight, render)
from .bracket import poisson
from .reduction import (p_coefficients, from_coefficients, structure_P, structure_Q, reduce_p,
                        reduce_mod, reduce_mod_I, reduce_by_rules)
from .variation import vary_mu, varmu_oracle, varmu_printed, hamiltonian
from .conditions import (condition_C_residual, default_mu1, spectral_bracket, spectral_vs_condition,
                         simplification_check, dn_zero_fiber, dn_bracket_closure)

__all__ = [
    'P', 'PBAR', 'jet', 'jet_info', 'field', 'fields', 'D', 'Dbar', 'Dn', 'truncate_t2',
    'truncate_derivatives', 'derivative_weight', 'render',
    'poisson',
    'p_coefficients', 'from_coefficients', 'structure_P', 'structure_Q', 'reduce_p', 'reduce_mod',
    'reduce_mod_I', 'reduce_by_rules',
    'vary_mu', 'varmu_oracle', 'varmu_printed', 'hamiltonian',
    'condition_C_residual', 'default_mu1', 'spectral_bracket', 'spectral_vs_condition',
    'simplification_check', 'dn_zero_fiber', 'dn_bracket_closure'
]
