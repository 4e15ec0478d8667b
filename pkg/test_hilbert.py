import pytest
import sympy

from algebra import gauss, zeros
from core.errors import ConstraintError, NonGenericConfigurationError, NotFiniteCodimensionError, UsageError
from hilbert import (BigCellPoint, CommutingPair, YoungDiagram, barycenter, chow, expected_bracket,
                     expected_bracket_printed, from_points, haiman_canonical_defect, ideal_from_dict, is_cyclic,
                     mult_ops, poisson_table, pullback_check, quotient_basis, reduced_point, support,
                     zero_fiber_isotropy, zero_fiber_pair)

POINTS = [(0, 1), (1, 2), (2, 5)]


def test_points_ideal_has_row_chart():
    ideal = from_points(POINTS)
    data = quotient_basis(ideal)
    assert data.basis == [(0, 0), (1, 0), (2, 0)]
    assert data.codim == 3
    assert (0, 1) in [r.monomial for r in data.relations]


def test_points_sharing_x_are_rejected():
    with pytest.raises(NonGenericConfigurationError):
        from_points([(1, 0), (1, 2)])


def test_support_recovers_points():
    pair = mult_ops(from_points(POINTS))
    found = support(pair)
    assert len(found) == 3
    for (x, y), (px, py) in zip(found, POINTS):
        assert abs(x - px) < 1e-8 and abs(y - py) < 1e-8


def test_barycenter_is_mean_of_points():
    pair = mult_ops(from_points(POINTS)).exact()
    bx, by = barycenter(pair)
    assert bx == gauss(1)
    assert by == gauss('8/3')


def test_points_pair_is_cyclic():
    cyclic, certificate = is_cyclic(mult_ops(from_points(POINTS)))
    assert cyclic
    assert certificate['algebra_dim'] == 3


def test_zero_pair_is_not_cyclic():
    cyclic, certificate = is_cyclic(CommutingPair(zeros(2), zeros(2)))
    assert not cyclic
    assert certificate['reason'] == 'algebra dimension below n'


def test_nilpotent_zero_fiber_pair():
    pair = zero_fiber_pair(3, [gauss(2), gauss(-1)])
    cyclic, _ = is_cyclic(pair)
    assert cyclic
    assert all(abs(x) < 1e-6 and abs(y) < 1e-6 for x, y, _ in chow(pair))
    assert sum(m for _, _, m in chow(pair)) == 3


def test_non_commuting_pair_is_rejected():
    o, l = gauss(0), gauss(1)
    with pytest.raises(ConstraintError):
        CommutingPair([[o, l], [o, o]], [[l, o], [o, o]])


def test_ideal_from_dict_and_codim_checks():
    ideal = ideal_from_dict({'generators': ['x^2', 'y'], 'codim': 2})
    assert quotient_basis(ideal).basis == [(0, 0), (1, 0)]
    with pytest.raises(UsageError):
        quotient_basis(ideal_from_dict({'generators': ['x^2', 'y'], 'codim': 3}))
    with pytest.raises(NotFiniteCodimensionError):
        quotient_basis(ideal_from_dict({'generators': ['y']}))
    with pytest.raises(UsageError):
        quotient_basis(ideal_from_dict({'generators': ['x', 'x + 1']}))


def test_big_cell_point_support():
    pt = BigCellPoint(2, [0, 1], [0, 1])
    found = sorted(support(pt.pair()), key=lambda p: p[0].real)
    assert abs(found[0][0] + 1) < 1e-8 and abs(found[0][1] + 1) < 1e-8
    assert abs(found[1][0] - 1) < 1e-8 and abs(found[1][1] - 1) < 1e-8


def test_reduced_point_derives_mu1():
    t2, t3, mu2, mu3 = sympy.symbols('t2 t3 mu2 mu3')
    pt = reduced_point(3, [t2, t3], [mu2, mu3])
    assert pt.t[0] == 0
    assert sympy.expand(pt.mu[0] + sympy.Rational(2, 3) * t2 * mu3) == 0
    with pytest.raises(UsageError):
        BigCellPoint(2, [1], [0, 1])


def test_poisson_table_matches_closed_form():
    table = poisson_table(2)
    assert table['status'] == 'pass'
    assert table['brackets']['{mu2,t2}'] == '-1'


def test_printed_sign_of_t0_disagrees_on_the_diagonal(caplog):
    with caplog.at_level('WARNING'):
        table = poisson_table(3)
    assert table['status'] == 'pass'
    assert table['printed_mismatches'] == 6
    assert expected_bracket(3, 2, 2) == -expected_bracket_printed(3, 2, 2) == -1
    assert expected_bracket_printed(3, 1, 3) == sympy.Symbol('t2')
    assert 'printed t_0 = +1' in caplog.text


def test_haiman_chart_is_darboux():
    assert haiman_canonical_defect(2).is_zero_matrix


def test_configuration_pullback_is_canonical():
    assert pullback_check([(3, 5)])['match']
    assert pullback_check([(0, 1), (1, 3)])['match']


def test_zero_fiber_is_isotropic():
    assert zero_fiber_isotropy(3).is_zero_matrix


def test_young_diagram_validation():
    assert YoungDiagram([2, 1]).boxes() == [(0, 0), (1, 0), (0, 1)]
    assert YoungDiagram.from_boxes([(0, 0), (0, 1)]).rows == [1, 1]
    with pytest.raises(UsageError):
        YoungDiagram([1, 2])
