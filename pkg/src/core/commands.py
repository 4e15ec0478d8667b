"""Verb implementations shared by the command line and the HTTP API.

Each command takes a RunConfig and a plain parameter dict (CLI flags or a
JSON request body) and returns a JSON-ready dict. Nothing here prints.
"""
import logging
import os
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from algebra import to_scalar, scalar_text
from conjstruct import conj_point, conj_t_check
from gaugefield import (FieldPatch, parabolic_coordinates, lambda_leading, lambda_limits, newton_solve,
                        pde_residual, read_fields, write_fields, spectral_sheets, condition_fields_n2, liouville_slope,
                        radial_profile, system_order)
from gl2action import GL2Elem, act, closed_form_n2, leading_factor
from hilbert import (BigCellPoint, from_points, ideal_from_dict, quotient_basis, mult_ops, is_cyclic, chow,
                     poisson_table)
from liehilb import (LieType, SlicePoint, idealic_map, in_hilb, is_cyclic_matrix, moduli_dimension,
                     spectral_curve_genus, cotangent_dimensions, principal_slice, family_ideal, ideals_equal,
                     extract_mu2)
from .config import RunConfig, SYSTEMS, EMIT_KINDS, LAMBDA_RADII, JET_EPSILONS
from .errors import SolverFailure, UsageError
from .io import write_csv
from .verify import VerificationRunner

logger = logging.getLogger(__name__)


def parse_complex(value: Any) -> complex:
    if isinstance(value, dict):
        try:
            return complex(float(value.get('re', 0)), float(value.get('im', 0)))
        except (TypeError, ValueError) as e:
            raise UsageError(f"malformed complex value {value!r}: {e}")
    if isinstance(value, str):
        try:
            return complex(value.replace(' ', '').replace('i', 'j'))
        except ValueError:
            raise UsageError(f"cannot parse complex value {value!r}")
    try:
        return complex(value)
    except (TypeError, ValueError):
        raise UsageError(f"cannot parse complex value {value!r}")


def parse_complex_list(values: Any) -> List[complex]:
    if values is None:
        return []
    if isinstance(values, str):
        values = [v for v in values.split(',') if v.strip()]
    return [parse_complex(v) for v in values]


def parse_matrix(rows: Any, name: str) -> np.ndarray:
    try:
        M = np.array([[parse_complex(v) for v in row] for row in rows], dtype=complex)
    except TypeError:
        raise UsageError(f"{name} must be a list of rows")
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise UsageError(f"{name} must be a square matrix")
    return M


def encode_complex(z: complex) -> Dict[str, float]:
    z = complex(z)
    return {'re': z.real, 'im': z.imag}


def _output_path(config: RunConfig, params: Dict[str, Any], default_name: str) -> str:
    return params.get('output') or os.path.join(config.output_dir, default_name)


def run_verify(config: RunConfig, suite: str, progress_callback: Optional[Callable] = None) -> Dict[str, Any]:
    return VerificationRunner(config, progress_callback).run(suite)


def run_hilbert(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    """Chart data, multiplication operators, cyclicity and support of an ideal.

    ``points`` (a list of [x, y] exact values) or ``ideal`` (ideal JSON) picks
    the ideal; ``table`` asks for the Poisson table of order n instead.
    """
    if params.get('table'):
        return poisson_table(config.n or 2)
    if params.get('points'):
        ideal = from_points(params['points'])
    elif params.get('ideal'):
        ideal = ideal_from_dict(params['ideal'])
    else:
        raise UsageError("hilbert needs 'points' or 'ideal'")
    quotient = quotient_basis(ideal)
    pair = mult_ops(ideal)
    cyclic, certificate = is_cyclic(pair, seed=config.seed)
    support = [{'x': encode_complex(x), 'y': encode_complex(y), 'multiplicity': m}
               for x, y, m in chow(pair, seed=config.seed)]
    return {'ideal': ideal.to_dict(), 'quotient': quotient.to_dict(), 'pair': pair.to_dict(),
            'cyclic': cyclic, 'certificate': certificate, 'chow': support}


def run_conj(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    """Conjugated coordinates of numeric (mubar, tbar); without values the
    symbolic partition formula is checked at order n."""
    mubar = parse_complex_list(params.get('mubar'))
    if not mubar:
        return conj_t_check(config.n or 3)
    tbar = parse_complex_list(params.get('tbar')) or None
    return conj_point(mubar, tbar).to_dict()


def run_gl2(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    if 'point' not in params or 'g' not in params:
        raise UsageError("gl2 needs a big-cell 'point' and a group element 'g'")
    point = BigCellPoint.from_dict(params['point'])
    g = GL2Elem.from_dict(params['g'])
    image = act(g, point)
    numeric = image.numeric()
    result = {'g': g.to_dict(), 'point': point.to_dict(),
              'image': {'n': image.n, 't': [encode_complex(v) for v in numeric['t']],
                        'mu': [encode_complex(v) for v in numeric['mu']]},
              'leading_factor': encode_complex(leading_factor(g, point))}
    if point.n == 2:
        result['closed_form'] = {k: encode_complex(v) for k, v in closed_form_n2(g, point).items()}
    return result


def run_lie(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    """Slice point of a classical type: membership in Hilb, cyclicity and the idealic image."""
    T = LieType.parse(params.get('type', 'A2'))
    t = params.get('t')
    mu = params.get('mu')
    if t is None:
        t = [0] * (T.rank - 1 if T.family == 'D' else T.rank)
    if mu is None:
        mu = [0] * (T.rank - 1 if T.family == 'D' else T.rank)
    extra = {}
    if T.family == 'D':
        extra = {'tau': params.get('tau', 0), 'sigma': params.get('sigma', 0)}
    point = SlicePoint(T, [to_scalar(v) for v in t], [to_scalar(v) for v in mu], **extra)
    A, B = point.matrices()
    _, charpoly = principal_slice(T, point.t, point.tau if T.family == 'D' else None)
    image = idealic_map(point)
    display = family_ideal(point)
    result = {'point': point.to_dict(), 'in_hilb': in_hilb(A, B, T), 'cyclic': is_cyclic_matrix(A),
              'charpoly': charpoly, 'ideal': image.to_dict(),
              'display_matches': None if display is None else ideals_equal(display, image.ideal)}
    if point.is_zero_fiber:
        result['mu2'] = scalar_text(extract_mu2(A, B, T))
    if params.get('genus') is not None:
        g = int(params['genus'])
        result['dimensions'] = moduli_dimension(T, g)
        if T.family == 'A':
            result['cotangent'] = cotangent_dimensions(T.m, g)
            result['spectral_curve'] = spectral_curve_genus(T.m, g)
    return result


def default_gauge_data(n: int):
    """Data at a point: subdiagonal Phi1, traceless A1 with both corner entries.

    The lower corner is -conj(mu_2) conj(a_1), the n = 2 flatness relation, so the
    lambda -> 0 limit of muhat_2 is 1 / conj(mu_2) there.
    """
    Phi1 = np.diag(np.ones(n - 1, dtype=complex), -1)
    diagonal = np.linspace(0.2, -0.2, n)
    A1 = np.diag(diagonal - diagonal.mean()).astype(complex)
    mu = [complex(0.3, 0.1)] + [complex(0.2 / k, -0.05 * k) for k in range(3, n + 1)]
    A1[0, n - 1] = 0.5
    A1[n - 1, 0] = -np.conj(mu[0]) * np.conj(A1[0, n - 1])
    return Phi1, A1, mu


def _gauge_inputs(config: RunConfig, params: Dict[str, Any]):
    if params.get('Phi1') is None:
        n = config.n or 2
        if n < 2:
            raise UsageError(f"the lambda family needs n >= 2, got {n}")
        return default_gauge_data(n)
    Phi1 = parse_matrix(params['Phi1'], 'Phi1')
    A1 = parse_matrix(params.get('A1', np.zeros_like(Phi1)), 'A1')
    if A1.shape != Phi1.shape:
        raise UsageError("Phi1 and A1 must have the same size")
    return Phi1, A1, parse_complex_list(params.get('mu'))


def run_gauge(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    """Parabolic coordinates of the lambda-family at a point, leading terms and both limits."""
    Phi1, A1, mu = _gauge_inputs(config, params)
    that, _ = parabolic_coordinates(Phi1, A1, mu, 1.0)
    leading = lambda_leading(Phi1, A1, mu)
    limits = lambda_limits(Phi1, A1, mu)
    return {'n': Phi1.shape[0], 'that_at_one': {f't{k}': encode_complex(v) for k, v in that.items()},
            'leading': leading, 'limits': {k: encode_complex(v) for k, v in limits.items()}}


def _boundary(params: Dict[str, Any], patch: FieldPatch, components: int) -> Optional[List[np.ndarray]]:
    path = params.get('boundary')
    if not path:
        return None
    source, fields = read_fields(path)
    if source.N != patch.N or source.geometry != patch.geometry:
        raise UsageError(f"boundary file {path} is on a different grid")
    names = sorted(fields)
    if len(names) < components:
        raise UsageError(f"boundary file {path} holds {len(names)} field(s), need {components}")
    return [np.real(fields[name]) for name in names[:components]]


def run_solve(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    """Newton solve of a standard-form system on a Dirichlet patch; writes the
    fields, the residual maps and, on failure, the residual history."""
    system = params.get('system')
    if system not in SYSTEMS:
        raise UsageError(f"unknown system {system!r}; expected one of {SYSTEMS}")
    patch = FieldPatch.dirichlet(config.N)
    t = params.get('t')
    t = parse_complex(t) if t is not None else None
    if system == 'toda':
        t = None
    n = system_order(system, config.n if system == 'toda' else None)
    components = n - 1 if system == 'toda' else 1
    boundary = _boundary(params, patch, components)
    prefix = os.path.join(config.output_dir, params.get('prefix') or system)
    logger.info("Solving %s on a %dx%d Dirichlet grid", system, patch.N, patch.N)
    try:
        result = newton_solve(patch, system, boundary, t, n)
    except SolverFailure as e:
        path = write_csv(prefix + '-history.csv', ['iteration', 'residual'], list(enumerate(e.history)))
        e.details['history_file'] = path
        raise
    phis = result.phis if system == 'toda' else result.phis[0]
    report = pde_residual(patch, system, phis, t, n)
    names = {f'phi{i + 1}': phi for i, phi in enumerate(result.phis)}
    residuals = {f'residual{i + 1}': r for i, r in enumerate(report.scalar)}
    files = write_fields(prefix + '-fields.csv', patch, names, {'system': system})
    files += write_fields(prefix + '-residual.csv', patch, residuals, {'system': system})
    summary = result.to_dict()
    summary.update({'N': patch.N, 'scalar_max': report.scalar_max, 'files': files})
    return summary


def _emit_field_csv(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    if params.get('input'):
        patch, fields = read_fields(params['input'])
    else:
        patch = FieldPatch.periodic(config.N)
        fields = {'zero': patch.zeros()}
    path = _output_path(config, params, 'field.csv')
    return {'files': write_fields(path, patch, fields), 'fields': sorted(fields), 'N': patch.N}


def _emit_sheet_csv(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    """n = 2 sheets from a field file with mu2 and t2, or from solutions of condition (C)."""
    if params.get('input'):
        patch, fields = read_fields(params['input'])
        missing = {'mu2', 't2'} - set(fields)
        if missing:
            raise UsageError(f"sheet input needs fields {sorted(missing)}")
        mu, t = [fields['mu2']], [fields['t2']]
    else:
        patch = FieldPatch.periodic(config.N)
        x, y = patch.coordinates
        mu, t = condition_fields_n2(patch, 1.0 + 0.3 * np.cos(x) + 0.2j * np.sin(y))
    eps = float(params.get('eps', JET_EPSILONS[0]))
    sheets = spectral_sheets(patch, mu, t, eps)
    path = _output_path(config, params, 'sheets.csv')
    header = ['ix', 'iy', 'x', 'y', 'sheet', 'p_re', 'p_im']
    summary = sheets.to_dict()
    summary['closedness'] = liouville_slope(patch, mu, t)
    summary['files'] = [write_csv(path, header, sheets.rows(patch))]
    return summary


def _emit_lambda_profile(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    Phi1, A1, mu = _gauge_inputs(config, params)
    n = Phi1.shape[0]
    report = lambda_leading(Phi1, A1, mu, LAMBDA_RADII, strict=False)
    header = ['radius'] + [f'that{k}_abs' for k in range(2, n + 1)] + [f'muhat{k}_abs' for k in range(2, n + 1)]
    rows = [[row['radius']] + [row['that'][k] for k in range(2, n + 1)] + [row['muhat'][k] for k in range(2, n + 1)]
            for row in report['profile']]
    path = _output_path(config, params, 'lambda-profile.csv')
    return {'files': [write_csv(path, header, rows)], 'fits': report['fits'], 'status': report['status']}


def _emit_radial_profile(config: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
    if not params.get('input'):
        raise UsageError("radial-profile needs an input field file")
    patch, fields = read_fields(params['input'])
    name = params.get('field') or (sorted(fields)[0] if fields else None)
    if name not in fields:
        raise UsageError(f"field {name!r} not in {params['input']}; available {sorted(fields)}")
    rows = radial_profile(patch, fields[name], bins=int(params.get('bins', 16)))
    path = _output_path(config, params, f'radial-{name}.csv')
    return {'files': [write_csv(path, ['r', f'mean_abs_{name}', 'count'], rows)], 'field': name}


EMITTERS = {
    'field-csv': _emit_field_csv,
    'sheet-csv': _emit_sheet_csv,
    'lambda-profile': _emit_lambda_profile,
    'radial-profile': _emit_radial_profile,
}


def run_emit(config: RunConfig, kind: str, params: Dict[str, Any]) -> Dict[str, Any]:
    if kind not in EMIT_KINDS:
        raise UsageError(f"unknown emit kind {kind!r}; expected one of {EMIT_KINDS}")
    result = EMITTERS[kind](config, params)
    result['kind'] = kind
    return result
