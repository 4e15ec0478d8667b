from .types import (LieType, FAMILIES, algebra_basis, project, contains, principal_nilpotent, dn_S,
                    grading, sl2_triple, slice_matrix, family_charpoly, simple_root_positions,
                    matrix_to_json, matrix_from_json, mat_pow)
from .hilb import (Centralizer, centralizer, is_regular, in_hilb, is_cyclic_matrix, power_span_dimension,
                   minimal_polynomial, char_polynomial, principal_slice, SlicePoint, extract_mu2,
                   dn_relations, principal_copy)
from .ideals import (annihilator, annihilator_ideal, family_ideal, idealic_map, IdealicImage,
                     minus_id_invariant, ideals_equal, negate_xy)
from .dimensions import exponents, moduli_dimension, cotangent_dimensions, spectral_curve_genus

__all__ = [
    'LieType', 'FAMILIES', 'algebra_basis', 'project', 'contains', 'principal_nilpotent', 'dn_S',
    'grading', 'sl2_triple', 'slice_matrix', 'family_charpoly', 'simple_root_positions',
    'matrix_to_json', 'matrix_from_json', 'mat_pow',
    'Centralizer', 'centralizer', 'is_regular', 'in_hilb', 'is_cyclic_matrix', 'power_span_dimension',
    'minimal_polynomial', 'char_polynomial', 'principal_slice', 'SlicePoint', 'extract_mu2',
    'dn_relations', 'principal_copy',
    'annihilator', 'annihilator_ideal', 'family_ideal', 'idealic_map', 'IdealicImage',
    'minus_id_invariant', 'ideals_equal', 'negate_xy',
    'exponents', 'moduli_dimension', 'cotangent_dimensions', 'spectral_curve_genus'
]
