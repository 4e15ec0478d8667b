import numpy as np
import pytest

from core.errors import ConstraintError, DegenerateGaugeError, SupportError, UsageError
from gaugefield import (FieldPatch, MatrixField, bump, cartan_matrix, companion_field, condition_fields_n2,
                        constant_parabolic_gauge, curvature, extract_t, lambda_leading, liouville_slope,
                        newton_solve, parabolic_gauge, parabolic_pair_n2, pde_residual, read_fields,
                        reality_defect, refinement_ratio, spectral_sheets, standard_form, system_order,
                        toda_cartan_check, trivialize_step, vacuum_fields, write_fields, xi2_closed_form)

PHI1 = np.array([[0, 0], [1, 0]], dtype=complex)
A1 = np.array([[0.1, 0.5], [0.2, -0.1]], dtype=complex)
MU2 = complex(0.3, 0.1)


@pytest.fixture
def patch():
    return FieldPatch.periodic(32)


def test_spectral_derivatives(patch):
    x, y = patch.coordinates
    assert np.max(np.abs(patch.dx(np.sin(x)) - np.cos(x))) < 1e-10
    assert np.max(np.abs(patch.dy(np.sin(y)) - np.cos(y))) < 1e-10
    f = np.exp(1j * x)
    assert np.max(np.abs(patch.d(f) - 0.5j * f)) < 1e-10
    assert np.max(np.abs(patch.dd_bar(np.cos(x + y)) + 0.5 * np.cos(x + y))) < 1e-10


def test_fd4_is_exact_on_quartics():
    grid = FieldPatch.dirichlet(21)
    x, y = grid.coordinates
    assert np.max(np.abs(grid.dx(x ** 4) - 4 * x ** 3)) < 1e-9
    assert np.max(np.abs(grid.dd_bar(x ** 2 + y ** 2) - 1.0)) < 1e-8
    f = np.sin(x + 2 * y) * np.exp(x * y)
    assert np.max(np.abs(grid.dd_bar(f) - grid.d(grid.dbar(f)))) < 1e-9


def test_patch_validation():
    with pytest.raises(UsageError):
        FieldPatch(16, 'sphere')
    with pytest.raises(UsageError):
        FieldPatch.dirichlet(5)
    with pytest.raises(UsageError):
        FieldPatch.periodic(32).dx(np.zeros((8, 8)))
    assert FieldPatch.dirichlet(11).refine().N == 21


def test_refinement_ratio():
    assert refinement_ratio([4.0, 1.0]) == 4.0
    assert refinement_ratio([1.0]) == float('inf')


def test_matrix_field_tags(patch):
    field = companion_field(patch, {2: 0.5, 3: 0.2}, 3)
    assert field.tags == ('companion',)
    with pytest.raises(ConstraintError):
        MatrixField.constant(patch, np.eye(2), tags=('traceless',))
    with pytest.raises(UsageError):
        companion_field(patch, {4: 1.0}, 3)
    with pytest.raises(UsageError):
        MatrixField(np.zeros((4, 4, 2)))


def test_constant_gauge_of_companion_is_identity():
    C = np.array([[0, 0, 0.2], [1, 0, 0.5], [0, 1, 0]], dtype=complex)
    P, that, _ = constant_parabolic_gauge(C)
    assert np.allclose(P, np.eye(3))
    assert abs(that[2] - 0.5) < 1e-12
    assert abs(that[3] - 0.2) < 1e-12


def test_degenerate_gauge():
    with pytest.raises(DegenerateGaugeError):
        constant_parabolic_gauge(np.zeros((2, 2)))


def test_parabolic_gauge_of_constant_companion(patch):
    A = companion_field(patch, {2: 0.5, 3: 0.2}, 3)
    result = parabolic_gauge(patch, A)
    assert np.max(np.abs(result.that[2] - 0.5)) < 1e-10
    assert result.companion_residual < 1e-10
    assert result.det_defect < 1e-10


def test_curvature_matches_xi2_closed_form(patch):
    x, y = patch.coordinates
    t = 0.3 + 0.1 * np.exp(1j * x)
    mu = 0.2 * np.cos(y)
    pair = parabolic_pair_n2(patch, t, mu)
    curv = curvature(patch, *pair)
    assert np.max(np.abs(curv.xi[2] - xi2_closed_form(patch, t, mu))) < 1e-8
    assert curv.first_columns_max < 1e-8


def test_systems():
    assert cartan_matrix(3).tolist() == [[2, -1], [-1, 2]]
    assert system_order('titeica') == 3
    with pytest.raises(UsageError):
        system_order('toda')
    with pytest.raises(UsageError):
        system_order('sinh-gordon')


def test_standard_form_is_traceless_and_real(patch):
    x, y = patch.coordinates
    form = standard_form(patch, 'toda', [0.1 * np.cos(x), 0.2 * np.sin(y)], n=3)
    assert np.max(np.abs(form.A1.trace())) < 1e-12
    assert reality_defect(patch, 'titeica', 0.2 * np.cos(x + y), 0.1) < 1e-12


def test_toda_diagonal_n2(patch):
    x, y = patch.coordinates
    check = toda_cartan_check(patch, [0.2 * np.sin(x) * np.cos(y)])
    assert check['cartan'] == [[2]]
    assert check['diagonal_defect'] < 1e-8


def test_extract_t_of_constant_fields(patch):
    Phi1 = MatrixField.constant(patch, [[0, 0], [2, 0]])
    field = MatrixField.constant(patch, A1)
    result = extract_t(patch, Phi1, field)
    assert np.max(np.abs(result.t[2] - 1.0)) < 1e-12
    assert result.dbar_residual[2] < 1e-10
    assert result.charpoly_defect < 1e-10


def test_extract_t_converges_at_backend_order():
    errors = []
    for grid in (FieldPatch.dirichlet(41), FieldPatch.dirichlet(41).refine()):
        Phi1 = MatrixField.constant(grid, [[0, 0], [1, 0]])
        field = MatrixField.from_entries(grid, [[0.3, np.exp(grid.z)], [0.0, -0.3]])
        result = extract_t(grid, Phi1, field)
        assert np.max(np.abs(result.t[2] - np.exp(grid.z))) < 1e-12
        errors.append(result.dbar_residual[2])
    target = 2.0 ** FieldPatch.dirichlet(41).order
    assert abs(refinement_ratio(errors) - target) <= 0.25 * target


def test_lambda_leading_terms():
    report = lambda_leading(PHI1, A1, [MU2])
    assert report['status'] == 'pass'
    assert len(report['fits']) == 2
    with pytest.raises(UsageError):
        lambda_leading(PHI1, A1, [MU2, MU2])


def test_newton_solves_cosh_gordon():
    result = newton_solve(FieldPatch.dirichlet(11), 'cosh-gordon', np.zeros((11, 11)))
    assert result.residual < 1e-10
    assert result.history[0] == pytest.approx(1.0)
    assert np.all(result.phis[0][2:-2, 2:-2] < 0)


def test_newton_solves_titeica_with_zero_boundary():
    result = newton_solve(FieldPatch.dirichlet(11), 'titeica', np.zeros((11, 11)))
    assert result.residual < 1e-8
    assert np.all(result.phis[0][2:-2, 2:-2] < 0)


@pytest.mark.parametrize('system, t, n', [
    ('cosh-gordon', None, None),
    ('cosh-gordon', 0.1, None),
    ('titeica', None, None),
    ('titeica', 0.1, None),
    ('toda', None, 3),
])
def test_newton_solutions_are_flat(system, t, n):
    result = newton_solve(FieldPatch.dirichlet(64), system, t=t, n=n)
    assert result.residual < 1e-8
    assert result.flatness < 1e-6


def test_cosh_gordon_flatness_bound_is_two_sided(patch):
    x, y = patch.coordinates
    rng = np.random.default_rng(11)
    constants = []
    for _ in range(20):
        a, b, c = rng.uniform(-0.15, 0.15, size=3)
        phi = a * np.cos(x + b) + b * np.sin(2 * y) + c * np.cos(x - y)
        t = complex(*rng.uniform(-0.5, 0.5, size=2)) + 0.2 * rng.uniform() * np.cos(y + a)
        report = pde_residual(patch, 'cosh-gordon', phi, t)
        constants.append(report.bound_constant)
        assert report.flatness_max <= 2.0 * (report.scalar_max + report.dbar_t_max)
        assert report.scalar_max + report.dbar_t_max <= 4.0 * report.flatness_max
    assert 0.25 <= min(constants) and max(constants) <= 2.0


def test_toda_n3_decouples_into_titeica():
    grid = FieldPatch.dirichlet(21)
    zero = np.zeros((21, 21))
    toda = newton_solve(grid, 'toda', [zero, zero], n=3)
    titeica = newton_solve(grid, 'titeica', zero)
    assert np.max(np.abs(toda.phis[0] - toda.phis[1])) < 1e-8
    assert np.max(np.abs(toda.phis[0] - titeica.phis[0])) < 1e-8


def test_vacuum_solves_the_untwisted_systems():
    grid = FieldPatch.dirichlet(33)
    for system, n in (('cosh-gordon', None), ('titeica', None), ('toda', 4)):
        report = pde_residual(grid, system, vacuum_fields(grid, system, n), None, n)
        assert report.scalar_max < 1e-4
    with pytest.raises(UsageError):
        vacuum_fields(grid, 'cosh-gordon', radius=0.5)


def test_newton_needs_dirichlet_patch(patch):
    with pytest.raises(UsageError):
        newton_solve(patch, 'cosh-gordon')
    with pytest.raises(UsageError):
        newton_solve(FieldPatch.dirichlet(11), 'toda', t=1.0, n=3)


def test_liouville_closedness_detects_condition(patch):
    x, y = patch.coordinates
    s = 1.0 + 0.3 * np.cos(x) + 0.2j * np.sin(y)
    mu, t = condition_fields_n2(patch, s)
    holds = spectral_sheets(patch, mu, t, 1e-4)
    violated = spectral_sheets(patch, [0.0], t, 1e-4)
    assert holds.masked_count == 0
    assert holds.residual < 1e-3 * violated.residual
    slope = liouville_slope(patch, [0.0], t)
    assert slope['slope'] == pytest.approx(1.0, abs=1e-6)
    assert slope['order'] == 'linear'
    exact = liouville_slope(patch, mu, t)
    assert exact['order'] == 'exact'
    assert exact['slope'] is None
    assert max(exact['residuals']) < 1e-12


def test_vanishing_jet_collapses(patch):
    sheets = spectral_sheets(patch, [0.0], [0.0], 1e-3)
    assert sheets.collapsed
    assert sheets.residual == 0.0


def test_trivialize_step():
    fine = FieldPatch.periodic(128)
    rng = np.random.default_rng(3)
    mu = np.zeros((128, 128), dtype=complex)
    for _ in range(3):
        offset = 0.8 * rng.uniform(-1, 1) + 0.8j * rng.uniform(-1, 1)
        amplitude = complex(rng.normal(), rng.normal())
        mu = mu + amplitude * bump(fine, fine.center + offset, rng.uniform(0.6, 1.0))
    result = trivialize_step(fine, mu, radius=2.5)
    assert result.residual < 1e-6
    assert abs(result.mass - np.mean(mu)) < 1e-14
    assert np.max(np.abs(trivialize_step(fine, np.zeros((128, 128))).v)) == 0.0
    with pytest.raises(SupportError):
        trivialize_step(fine, np.ones((128, 128)), radius=2.0)
    with pytest.raises(UsageError):
        trivialize_step(FieldPatch.dirichlet(11), np.zeros((11, 11)))


def test_cauchy_transform_inverts_dbar():
    fine = FieldPatch.periodic(128)
    center, radius, power = fine.center + 0.3 - 0.2j, 1.5, 8
    w = fine.z - center
    s = np.abs(w) ** 2 / radius ** 2
    g = bump(fine, center, radius, power)
    dbar_g = np.where(s < 1, -power * np.clip(1 - s, 0, None) ** (power - 1) * w / radius ** 2, 0.0)
    result = trivialize_step(fine, dbar_g, radius=2.5)
    assert np.max(np.abs(result.v + g)) < 1e-6


def test_field_files_round_trip(tmp_path, patch):
    x, y = patch.coordinates
    values = np.cos(x) + 1j * np.sin(y)
    path = str(tmp_path / 'fields.csv')
    write_fields(path, patch, {'phi': values})
    loaded_patch, fields = read_fields(path)
    assert loaded_patch == patch
    assert np.array_equal(fields['phi'], values)
