from .patch import FieldPatch, GEOMETRIES, fd_matrix, refinement_ratio
from .fields import MatrixField, TAGS, companion_field, gauge_transform
from .gauge import (GaugeResult, parabolic_gauge, constant_parabolic_gauge, CurvatureResult, curvature,
                    parabolic_pair_n2, xi2_closed_form, TExtraction, extract_t)
from .systems import (cartan_matrix, system_order, toda_diagonal, StandardForm, standard_form,
                      scalar_residuals, ResidualReport, pde_residual, toda_cartan_check, reality_defect,
                      vacuum_fields)
from .newton import SolveResult, newton_solve
from .lambdas import (higgs_part, lambda_connection, parabolic_coordinates, muhat2_closed_form,
                      LeadingFit, lambda_leading, lambda_limits)
from .sheets import (SheetData, spectral_sheets, liouville_slope, condition_fields_n2, bump,
                     bump_cauchy_transform, TrivializeResult, trivialize_step)
from .fieldio import write_fields, read_fields, field_rows, radial_profile

__all__ = [
    'FieldPatch', 'GEOMETRIES', 'fd_matrix', 'refinement_ratio',
    'MatrixField', 'TAGS', 'companion_field', 'gauge_transform',
    'GaugeResult', 'parabolic_gauge', 'constant_parabolic_gauge', 'CurvatureResult', 'curvature',
    'parabolic_pair_n2', 'xi2_closed_form', 'TExtraction', 'extract_t',
    'cartan_matrix', 'system_order', 'toda_diagonal', 'StandardForm', 'standard_form',
    'scalar_residuals', 'ResidualReport', 'pde_residual', 'toda_cartan_check', 'reality_defect', 'vacuum_fields',
    'SolveResult', 'newton_solve',
    'higgs_part', 'lambda_connection', 'parabolic_coordinates', 'muhat2_closed_form',
    'LeadingFit', 'lambda_leading', 'lambda_limits',
    'SheetData', 'spectral_sheets', 'liouville_slope', 'condition_fields_n2', 'bump',
    'bump_cauchy_transform', 'TrivializeResult', 'trivialize_step',
    'write_fields', 'read_fields', 'field_rows', 'radial_profile'
]
