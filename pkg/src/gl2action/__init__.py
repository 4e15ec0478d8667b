from .group import GL2Elem
from .action import (act, mbar_coeffs, conj_x, char_coeffs, closed_form_n2, leading_factor, point_distance,
                     jet_point, first_order)

__all__ = [
    'GL2Elem', 'act', 'mbar_coeffs', 'conj_x', 'char_coeffs', 'closed_form_n2', 'leading_factor',
    'point_distance', 'jet_point', 'first_order'
]
