"""Named verification suites over the symbolic and numeric modules.

Every suite returns a list of case records ``{'case', 'passed', 'residual',
'detail'}``; exact cases carry ``residual: None``. The runner aggregates them
into ``{suite, cases, pass, fail, worst_residual, results}``.
"""
import logging
import random
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import sympy

from .config import GAUGE_TOL, PULLBACK_CONFIGURATIONS, RunConfig, SUITE_ORDERS, SUITE_RANDOM_CASES
from .errors import HCSError, UsageError
from algebra import random_scalar, random_nonzero_scalar, to_scalar
from conjstruct import conj_t_check, conj_mu, conj_involution_check
from diffop import (DOp, curvature_semiclassical, a2_consistency, confluence_defect, parabolic_curvature,
                    quantum_fields, semiclassical_variation)
from diffpois import (D, Dbar, Dn, field, fields, render, hamiltonian, vary_mu, varmu_oracle, varmu_printed,
                      simplification_check, condition_C_residual,
                      default_mu1, spectral_vs_condition, dn_bracket_closure)
from gaugefield import (FieldPatch, MatrixField, companion_field, gauge_transform, parabolic_gauge,
                        parabolic_pair_n2, curvature, xi2_closed_form, toda_cartan_check, reality_defect,
                        parabolic_coordinates, muhat2_closed_form, lambda_limits, refinement_ratio,
                        condition_fields_n2, liouville_slope)
from gl2action import GL2Elem, act, closed_form_n2, leading_factor, point_distance
from hilbert import BigCellPoint, poisson_table, haiman_canonical_defect, pullback_check, zero_fiber_isotropy
from liehilb import (LieType, SlicePoint, centralizer, principal_nilpotent, in_hilb, idealic_map, is_cyclic_matrix,
                     dn_relations, extract_mu2, family_ideal, ideals_equal, principal_copy, principal_slice)

logger = logging.getLogger(__name__)

Case = Dict[str, Any]


def _case(name: str, passed: bool, residual: Optional[float] = None, detail: Any = None) -> Case:
    return {'case': name, 'passed': bool(passed),
            'residual': None if residual is None else float(residual), 'detail': detail}


def _orders(suite: str, config: RunConfig) -> List[int]:
    if config.n is not None:
        return [config.n]
    return list(SUITE_ORDERS[suite])


def _complex(rng: np.random.Generator, scale: float = 1.0) -> complex:
    return complex(scale * rng.uniform(-1, 1), scale * rng.uniform(-1, 1))


def _all_zero(values) -> bool:
    return all(sympy.expand(v) == 0 for v in values)


def suite_poisson_table(config: RunConfig) -> List[Case]:
    cases = []
    rng = random.Random(config.seed)
    for n in _orders('poisson-table', config):
        table = poisson_table(n)
        cases.append(_case(f'n={n}', table['status'] == 'pass', detail={'mismatches': table['mismatches']}))
        cases.append(_case(f'n={n} printed t0 = +1 table disagrees', table['printed_mismatches'] > 0,
                           detail={'printed_mismatches': table['printed_mismatches']}))
        for trial in range(PULLBACK_CONFIGURATIONS):
            points = list(zip(rng.sample(range(-9, 10), n), [rng.randint(-9, 9) for _ in range(n)]))
            cases.append(_case(f'n={n} configuration pullback #{trial + 1}', pullback_check(points)['match'],
                               detail={'points': [list(p) for p in points]}))
        cases.append(_case(f'n={n} zero fiber isotropic', zero_fiber_isotropy(n).is_zero_matrix))
    return cases


def suite_haiman(config: RunConfig) -> List[Case]:
    cases = []
    for n in _orders('haiman', config):
        defect = haiman_canonical_defect(n)
        nonzero = [[i, j] for i in range(defect.rows) for j in range(defect.cols) if defect[i, j] != 0]
        cases.append(_case(f'n={n}', not nonzero, detail={'nonzero_entries': nonzero}))
    return cases


def suite_variation(config: RunConfig) -> List[Case]:
    cases = []
    for n in _orders('variation', config):
        mu = fields('mu', range(2, n + 1))
        for k in range(2, n + 1):
            computed = vary_mu(n, mu, hamiltonian(k))
            expected = varmu_oracle(n, mu, k, field(f'v{k}'))
            diff = {l: sympy.expand(computed[l] - expected[l]) for l in computed}
            bad = {f'mu{l}': render(d) for l, d in diff.items() if d != 0}
            cases.append(_case(f'n={n} k={k}', not bad, detail={'differences': bad}))
        trivial = vary_mu(n, mu, hamiltonian(n + 1))
        cases.append(_case(f'n={n} k={n + 1} acts trivially', _all_zero(trivial.values()),
                           detail={f'mu{l}': render(v) for l, v in trivial.items() if v != 0}))
        for which in (0, 1):
            extra = simplification_check(n, hamiltonian(n), field('g'), which)
            cases.append(_case(f'n={n} ideal multiples drop out (f{which + 1})', extra == 0,
                               detail={'residual': render(extra)}))
        if n >= 3:
            printed = varmu_printed(n, mu, 2, field('v2'))
            shifted = vary_mu(n, mu, hamiltonian(2))
            differs = any(sympy.expand(printed[l] - shifted[l]) != 0 for l in printed)
            cases.append(_case(f'n={n} shifted index variant disagrees', differs))
    return cases


def suite_condition_c(config: RunConfig) -> List[Case]:
    cases = []
    for n in _orders('condition-C', config):
        mu = fields('mu', range(2, n + 1))
        t = fields('t', range(2, n + 1))
        zero_mu = condition_C_residual(n, [sympy.Integer(0)] * (n - 1), t)
        ok = _all_zero(r + Dbar(tk) for r, tk in zip(zero_mu, t))
        cases.append(_case(f'n={n} mu=0', ok, detail={'residuals': [render(r) for r in zero_mu]}))

        residual = condition_C_residual(n, mu, t)
        doubled = condition_C_residual(n, mu, [2 * tk for tk in t])
        cases.append(_case(f'n={n} linear in t', _all_zero(d - 2 * r for d, r in zip(doubled, residual))))
    return cases


def _perturbed_mu1(config: RunConfig, n: int, mu, t):
    text = config.inputs.get('mu1')
    if not text:
        return default_mu1(n, mu, t) + field('w')
    names = {f'mu{k}': field(f'mu{k}') for k in range(2, n + 1)}
    names.update({f't{k}': field(f't{k}') for k in range(2, n + 1)})
    names['w'] = field('w')
    try:
        return sympy.sympify(text, locals=names)
    except (sympy.SympifyError, SyntaxError) as e:
        raise UsageError(f"cannot parse mu1 expression {text!r}: {e}")


def suite_spectral_lagrangian(config: RunConfig) -> List[Case]:
    """Bracket coefficients against condition (C); with a supplied ``mu1`` input the
    check runs on that value and is expected to fail."""
    cases = []
    supplied = bool(config.inputs.get('mu1'))
    for n in _orders('spectral-lagrangian', config):
        mu = fields('mu', range(2, n + 1))
        t = fields('t', range(2, n + 1))
        perturbed = spectral_vs_condition(n, mu, t, _perturbed_mu1(config, n, mu, t))
        if supplied:
            cases.append(_case(f'n={n} supplied mu1', perturbed['status'] == 'pass', detail=perturbed))
            continue
        report = spectral_vs_condition(n, mu, t)
        cases.append(_case(f'n={n}', report['status'] == 'pass', detail=report))
        cases.append(_case(f'n={n} perturbed mu1 detected', not perturbed['top_vanishes'],
                           detail={'top_coefficient': perturbed['top_coefficient']}))
    return cases


def suite_conjugation(config: RunConfig) -> List[Case]:
    orders = _orders('conjugation', config)
    cases = []
    for n in orders:
        check = conj_t_check(n)
        cases.append(_case(f'n={n} partition formula', check['status'] == 'ok',
                           detail={'mismatches': check['mismatches']}))

    rng = np.random.default_rng(config.seed)
    mb = [complex(1.3, 0.4), complex(-0.2, 0.5), complex(0.7, -0.1)]
    kmu = conj_mu(mb)
    closed = [1 / mb[0], -mb[1] / mb[0] ** 3, (-mb[0] * mb[2] + 2 * mb[1] ** 2) / mb[0] ** 5]
    deviation = max(abs(a - b) for a, b in zip(kmu, closed))
    cases.append(_case('closed forms n=4', deviation <= config.tol, deviation))

    for i in range(SUITE_RANDOM_CASES['conjugation']):
        n = orders[i % len(orders)]
        mu = [complex(np.exp(rng.uniform(-0.5, 0.5)) * np.exp(1j * rng.uniform(0, 2 * np.pi)))]
        mu += [_complex(rng, 0.5) for _ in range(n - 2)]
        t = [_complex(rng) for _ in range(n - 1)]
        devs = conj_involution_check(mu, t, n)
        worst = max(devs.values())
        scale = 1.0 + max(abs(v) for v in mu + t)
        cases.append(_case(f'involution #{i} n={n}', worst <= config.tol * scale, worst))
    return cases


def _random_big_cell(rng: np.random.Generator, n: int):
    t = [0j] + [_complex(rng, 0.3) for _ in range(n - 2)] + [complex(1.0 + 0.2 * rng.uniform(), 0.3 * rng.uniform(-1, 1))]
    mu = [0j] + [_complex(rng, 0.3) for _ in range(n - 1)]
    return BigCellPoint(n, [sympy.sympify(v) for v in t], [sympy.sympify(v) for v in mu])


def _near_identity(rng: np.random.Generator):
    return GL2Elem(1 + _complex(rng, 0.1), _complex(rng, 0.1))


def suite_gl2(config: RunConfig) -> List[Case]:
    orders = _orders('gl2', config)
    rng = np.random.default_rng(config.seed)
    cases = []
    for i in range(SUITE_RANDOM_CASES['gl2']):
        n = orders[i % len(orders)]
        pt = _random_big_cell(rng, n)
        g, h = _near_identity(rng), _near_identity(rng)
        try:
            image = act(g, pt)
            composed = point_distance(act(g * h, pt), act(g, act(h, pt)))
        except HCSError as e:
            cases.append(_case(f'action #{i} n={n}', False, detail={'error': str(e)}))
            continue
        num, new = pt.numeric(), image.numeric()
        leading = abs(new['t'][n - 1] - leading_factor(g, pt) ** n * num['t'][n - 1])
        residual = max(composed, leading)
        if n == 2:
            closed = closed_form_n2(g, pt)
            residual = max(residual, abs(closed['t2'] - new['t'][1]), abs(closed['mu2'] - new['mu'][1]))
        cases.append(_case(f'action #{i} n={n}', residual <= 1e-8, residual))
    return cases


def suite_curvature(config: RunConfig) -> List[Case]:
    cases = []
    for n in _orders('curvature', config):
        report = curvature_semiclassical(n)
        cases.append(_case(f'n={n} semiclassical limit', report['status'] == 'pass',
                           detail={'mismatches': report['mismatches']}))
        that, muhat = quantum_fields(n)
        columns = a2_consistency(n, that, muhat)
        cases.append(_case(f'n={n} second matrix', columns['status'] == 'pass',
                           detail={'defects': columns['defects'], 'trace': columns['trace']}))
        xi = parabolic_curvature(n, that, muhat)
        defect = confluence_defect(DOp.nabla(n, 1), n, that, muhat)
        gap = [sympy.expand(defect.coeff(n - k) + x) for k, x in enumerate(xi, start=2)]
        cases.append(_case(f'n={n} reduction orders differ by curvature', _all_zero(gap),
                           detail={'difference': [render(g) for g in gap]}))
        for k in range(2, n + 1):
            variation = semiclassical_variation(n, k)
            cases.append(_case(f'n={n} k={k} gauge variation semiclassical', variation['status'] == 'pass',
                               detail={'mismatches': variation['mismatches']}))
        if n == 2:
            t, mu = that[0], muhat[0]
            closed = Dbar(t) - mu * D(t) - 2 * t * D(mu) + sympy.Rational(1, 2) * Dn(mu, 3)
            diff = sympy.expand(xi[0] - closed)
            cases.append(_case('n=2 closed form', diff == 0, detail={'difference': render(diff)}))
    return cases


def _random_slice_point(rng: random.Random, T):
    r = T.rank
    if T.family == 'A':
        return SlicePoint(T, [random_scalar(rng, 3) for _ in range(r)], [random_scalar(rng, 3) for _ in range(r)])
    if T.family == 'D':
        t = [random_scalar(rng, 3) for _ in range(r - 1)]
        if rng.random() < 0.5:
            return SlicePoint(T, t, [random_scalar(rng, 3) for _ in range(r - 1)],
                              tau=random_nonzero_scalar(rng, 3))
        return SlicePoint(T, [0] * (r - 1), [random_scalar(rng, 3) for _ in range(r - 1)],
                          tau=0, sigma=random_nonzero_scalar(rng, 3))
    return SlicePoint(T, [random_scalar(rng, 3) for _ in range(r)], [random_scalar(rng, 3) for _ in range(r)])


def suite_lie(config: RunConfig) -> List[Case]:
    cases = []
    for r in _orders('lie', config):
        for family, lowest in (('A', 1), ('B', 2), ('C', 2), ('D', 3)):
            # B1 and C1 are A1 again
            if r < lowest:
                continue
            T = LieType(family, r)
            dim = centralizer(principal_nilpotent(T), T).dimension
            cases.append(_case(f'{T.name} principal nilpotent regular', dim == T.rank,
                               detail={'centralizer_dimension': dim}))
            copy = principal_copy(T, to_scalar(1), to_scalar(2))
            cases.append(_case(f'{T.name} principal sl2 copy in Hilb', copy['regular'] and copy['in_hilb']))
            t = [to_scalar(k + 1) for k in range(T.rank - 1 if family == 'D' else T.rank)]
            _, check = principal_slice(T, t, to_scalar(1) if family == 'D' else None)
            cases.append(_case(f'{T.name} slice characteristic polynomial', check['match'], detail=check))

    rng = random.Random(config.seed)
    count = SUITE_RANDOM_CASES['lie']
    for name in ('A1', 'A2', 'B2', 'C2', 'D3'):
        T = LieType.parse(name)
        failures = []
        for i in range(count):
            A, B = _random_slice_point(rng, T).matrices()
            if not in_hilb(A, B, T):
                failures.append(i)
        cases.append(_case(f'{name} random slice pairs in Hilb', not failures,
                           detail={'pairs': count, 'failures': failures}))

    for name in ('B2', 'C2', 'D3'):
        T = LieType.parse(name)
        image = idealic_map(_random_slice_point(rng, T))
        cases.append(_case(f'{name} ideal invariant under -id', bool(image.invariant),
                           detail={'codim': image.ideal.n}))

    for name in ('A3', 'B2', 'C2', 'D3'):
        T = LieType.parse(name)
        count_mu = T.rank - 1 if T.family == 'D' else T.rank
        mu = [random_nonzero_scalar(rng, 3) for _ in range(count_mu)]
        A, B = SlicePoint(T, [0] * count_mu, mu).matrices()
        found = extract_mu2(A, B, T)
        cases.append(_case(f'{name} mu2 from the zero fiber', found == mu[0]))

        point = _random_slice_point(rng, T)
        display = family_ideal(point)
        matches = display is None or ideals_equal(display, idealic_map(point).ideal)
        cases.append(_case(f'{name} displayed ideal matches the annihilator', matches,
                           detail={'point': point.to_dict()}))

    T = LieType.parse('D3')
    t = [random_nonzero_scalar(rng, 3) for _ in range(T.rank - 1)]
    cyclic = is_cyclic_matrix(SlicePoint(T, t, [0] * (T.rank - 1), tau=random_nonzero_scalar(rng, 3)).slice())
    degenerate = is_cyclic_matrix(SlicePoint(T, t, [0] * (T.rank - 1), tau=0).slice())
    cases.append(_case('D3 cyclic iff tau != 0', cyclic and not degenerate,
                       detail={'tau_nonzero': cyclic, 'tau_zero': degenerate}))
    return cases


def suite_dn_relations(config: RunConfig) -> List[Case]:
    cases = []
    for r in _orders('dn-relations', config):
        report = dn_relations(LieType('D', r))
        cases.append(_case(f'D{r} matrix relations', report['status'] == 'pass', detail=report))
        closure = dn_bracket_closure(r)
        cases.append(_case(f'D{r} zero-fiber bracket closure', closure['status'] == 'pass',
                           detail={'failures': closure['failures']}))
    return cases


def suite_gauge(config: RunConfig) -> List[Case]:
    """Numeric round trips on the configured periodic grid and the n = 2 lambda family at a point."""
    patch = FieldPatch.periodic(config.N)
    x, y = patch.coordinates
    cases = []
    for n in (2, 3):
        that = {k: 0.3 * np.cos(x + k) + 0.2j * np.sin(y) + 0.1 * k for k in range(2, n + 1)}
        entries = [[1.0 if i == j else (0.2 * np.sin(x + i) + 0.1j * np.cos(y - j) if j > i else 0.0)
                    for j in range(n)] for i in range(n)]
        M = MatrixField.from_entries(patch, entries)
        A1 = gauge_transform(patch, M, companion_field(patch, that, n))
        result = parabolic_gauge(patch, A1)
        deviation = max(float(np.max(np.abs(result.that[k] - that[k]))) for k in that)
        residual = max(deviation, result.companion_residual, result.trace_defect)
        cases.append(_case(f'parabolic gauge round trip n={n}', residual <= GAUGE_TOL, residual))

    t = 0.5 + 0.2 * np.cos(x) * np.sin(y)
    mu = 0.3 * np.sin(x + y) + 0.1j * np.cos(2 * x)
    A1, A2 = parabolic_pair_n2(patch, t, mu)
    curv = curvature(patch, A1, A2)
    residual = max(float(np.max(np.abs(curv.xi[2] - xi2_closed_form(patch, t, mu)))), curv.first_columns_max)
    cases.append(_case('parabolic curvature n=2', residual <= GAUGE_TOL, residual))

    phis = [0.2 * np.sin(x) * np.cos(y), 0.1 * np.cos(x + y)]
    check = toda_cartan_check(patch, phis)
    cases.append(_case('toda diagonal n=3', check['diagonal_defect'] <= GAUGE_TOL, check['diagonal_defect']))

    defect = reality_defect(patch, 'cosh-gordon', [0.3 * np.cos(x) * np.cos(y)], 0.2 + 0.1 * np.sin(y))
    cases.append(_case('reality of the lambda family', defect <= 1e-12, defect))

    mu2, t2 = condition_fields_n2(patch, 1.0 + 0.3 * np.cos(x) + 0.2j * np.sin(y))
    holds = liouville_slope(patch, mu2, t2)
    cases.append(_case('liouville closedness under condition (C)', holds['order'] == 'exact',
                       max(holds['residuals']), detail=holds))
    violated = liouville_slope(patch, [0.0], t2)
    cases.append(_case('liouville residual linear in eps without (C)', violated['order'] == 'linear',
                       detail=violated))

    rng = np.random.default_rng(config.seed)
    Phi1 = np.array([[0, 0], [1, 0]], dtype=complex)
    mu2 = complex(0.3, 0.1)
    # flatness at a point ties a_2 to a_1
    A1 = np.array([[0.1, 0.5], [-np.conj(mu2) * 0.5, -0.1]], dtype=complex)
    worst = 0.0
    for _ in range(10):
        lam = rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        _, muhat = parabolic_coordinates(Phi1, A1, [mu2], lam)
        worst = max(worst, abs(muhat[2] - muhat2_closed_form(Phi1, A1, mu2, lam)))
    cases.append(_case('lambda family n=2 closed form', worst <= 1e-10, worst))
    limits = lambda_limits(Phi1, A1, [mu2])
    gap = max(abs(limits['infinity'] - mu2), abs(limits['zero'] - 1 / np.conj(mu2)))
    cases.append(_case('lambda family n=2 limits', gap <= 1e-6, gap))

    errors = []
    for N in (33, 65):
        grid = FieldPatch.dirichlet(N)
        gx, gy = grid.coordinates
        errors.append(float(np.max(np.abs(grid.dx(np.sin(gx + 2 * gy)) - np.cos(gx + 2 * gy)))))
    ratio = refinement_ratio(errors)
    target = 2.0 ** FieldPatch.dirichlet(33).order
    cases.append(_case('fd4 refinement ratio', abs(ratio - target) <= 0.25 * target, errors[-1],
                       detail={'ratio': ratio, 'expected': target}))
    return cases


SUITES: Dict[str, Callable[[RunConfig], List[Case]]] = {
    'poisson-table': suite_poisson_table,
    'haiman': suite_haiman,
    'variation': suite_variation,
    'condition-C': suite_condition_c,
    'spectral-lagrangian': suite_spectral_lagrangian,
    'conjugation': suite_conjugation,
    'gl2': suite_gl2,
    'curvature': suite_curvature,
    'lie': suite_lie,
    'dn-relations': suite_dn_relations,
    'gauge': suite_gauge,
}


def suite_names() -> List[str]:
    return list(SUITES) + ['all']


class VerificationRunner:
    def __init__(self, config: RunConfig, progress_callback=None):
        self.config = config
        self.progress_callback = progress_callback

    def _send_progress(self, step: str, status: str, detail: str = ""):
        if self.progress_callback:
            self.progress_callback({
                'step': step,
                'status': status,
                'detail': detail
            })

    def run_suite(self, name: str) -> Dict[str, Any]:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; expected one of {suite_names()}")
        self._send_progress(name, 'active', f"Running {name}...")
        logger.info("Running suite %s", name)
        results = SUITES[name](self.config)
        report = summarize(name, results)
        logger.info("  %s: %d passed, %d failed", name, report['pass'], report['fail'])
        self._send_progress(name, 'completed', f"{report['pass']}/{report['cases']} passed")
        return report

    def run(self, name: str) -> Dict[str, Any]:
        if name != 'all':
            return self.run_suite(name)
        reports = [self.run_suite(suite) for suite in SUITES]
        combined = summarize('all', [r for report in reports for r in report['results']])
        combined['suites'] = {report['suite']: {k: v for k, v in report.items() if k != 'results'}
                              for report in reports}
        del combined['results']
        return combined


def summarize(name: str, results: List[Case]) -> Dict[str, Any]:
    passed = sum(1 for r in results if r['passed'])
    residuals = [r['residual'] for r in results if r['residual'] is not None]
    return {
        'suite': name,
        'cases': len(results),
        'pass': passed,
        'fail': len(results) - passed,
        'worst_residual': max(residuals) if residuals else 0.0,
        'results': results,
    }
