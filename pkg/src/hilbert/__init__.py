from .ideal import (Ideal, QuotientData, Relation, TriangularReducer, RuleReducer, GroebnerReducer,
                    quotient_basis, express, from_points, ideal_from_dict, split_xy)
from .pairs import (CommutingPair, mult_ops, is_cyclic, algebra_dimension, chow, support,
                    zero_fiber_pair, barycenter)
from .bigcell import BigCellPoint, reduced_point, reduced_mu1, t_symbols, mu_symbols
from .symplectic import (symplectic_matrix, poisson_bivector, poisson_table, expected_bracket,
                         expected_bracket_printed, YoungDiagram, haiman_coords, haiman_canonical_defect, pullback_check,
                         zero_fiber_isotropy)

__all__ = [
    'Ideal', 'QuotientData', 'Relation', 'TriangularReducer', 'RuleReducer', 'GroebnerReducer',
    'quotient_basis', 'express', 'from_points', 'ideal_from_dict', 'split_xy',
    'CommutingPair', 'mult_ops', 'is_cyclic', 'algebra_dimension', 'chow', 'support',
    'zero_fiber_pair', 'barycenter',
    'BigCellPoint', 'reduced_point', 'reduced_mu1', 't_symbols', 'mu_symbols',
    'symplectic_matrix', 'poisson_bivector', 'poisson_table', 'expected_bracket', 'expected_bracket_printed',
    'YoungDiagram', 'haiman_coords', 'haiman_canonical_defect', 'pullback_check',
    'zero_fiber_isotropy'
]
