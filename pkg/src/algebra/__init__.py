from .scalars import (gauss, to_scalar, conjugate, scalar_to_json, scalar_from_json,
                      scalar_text, to_sympy, to_complex, random_scalar, random_nonzero_scalar)
from .polys import (Registry, conjugate_name, poly_vars, degree_in, coeffs_in, coeff_list, evaluate,
                    constant_value, poly_to_text, poly_to_json, poly_from_json, random_poly)
from .linalg import (det_fraction_free, sylvester_matrix, resultant, resultant_coeffs, to_exact_matrix,
                     rank_exact, nullspace_exact, solve_exact, mat_mul, mat_vec, mat_sub, commutator,
                     is_zero_matrix, identity, zeros)
from .jets import Jet1, principal_root, det_jet1, det_jet_numeric, jets_max_deviation
from .localized import Localized
from .roots import roots_numeric, residual
from .identities import identity_at_samples, total_degree

__all__ = [
    'gauss', 'to_scalar', 'conjugate', 'scalar_to_json', 'scalar_from_json', 'scalar_text',
    'to_sympy', 'to_complex', 'random_scalar', 'random_nonzero_scalar',
    'Registry', 'conjugate_name', 'poly_vars', 'degree_in', 'coeffs_in', 'coeff_list', 'evaluate',
    'constant_value', 'poly_to_text', 'poly_to_json', 'poly_from_json', 'random_poly',
    'det_fraction_free', 'sylvester_matrix', 'resultant', 'resultant_coeffs', 'to_exact_matrix',
    'rank_exact', 'nullspace_exact', 'solve_exact', 'mat_mul', 'mat_vec', 'mat_sub', 'commutator',
    'is_zero_matrix', 'identity', 'zeros',
    'Jet1', 'principal_root', 'det_jet1', 'det_jet_numeric', 'jets_max_deviation',
    'Localized',
    'roots_numeric', 'residual',
    'identity_at_samples', 'total_degree'
]
