import numpy as np
import pytest
import sympy

from core.errors import ChartBoundaryError, ConstraintError, UsageError
from gl2action import GL2Elem, act, closed_form_n2, leading_factor, mbar_coeffs, point_distance
from hilbert import BigCellPoint


def point(t, mu):
    return BigCellPoint(len(t), [sympy.sympify(v) for v in t], [sympy.sympify(v) for v in mu])


PT2 = point([0, 1.1 + 0.4j], [0.05j, 0.3 + 0.1j])
PT3 = point([0, 0.2 - 0.1j, 1.05 + 0.2j], [0.03, 0.1 + 0.2j, -0.2 + 0.05j])


def test_real_coordinates_round_trip():
    g = GL2Elem.from_real(1.2, 0.3, -0.1, 0.9)
    assert np.allclose(g.to_real(), (1.2, 0.3, -0.1, 0.9))
    assert GL2Elem.from_real(1, 0, 0, 1) == GL2Elem.identity()


def test_group_law_matches_matrices():
    g = GL2Elem(1.1 + 0.2j, 0.3 - 0.1j)
    h = GL2Elem(0.9 - 0.1j, -0.2 + 0.05j)
    assert np.allclose((g * h).matrix(), g.matrix() @ h.matrix())
    e = g * g.inverse()
    assert abs(e.a - 1) < 1e-12 and abs(e.b) < 1e-12


def test_light_cone_degenerate_element():
    with pytest.raises(ConstraintError):
        GL2Elem(1 + 0j, 1 + 0j)
    with pytest.raises(UsageError):
        GL2Elem.from_dict([1, 2])


def test_identity_acts_trivially():
    for pt in (PT2, PT3):
        assert point_distance(act(GL2Elem.identity(), pt), pt) < 1e-10


def test_scaling_weights():
    lam = 1.7
    image = act(GL2Elem.scaling(lam), PT2).numeric()
    num = PT2.numeric()
    assert abs(image['t'][1] - lam ** 2 * num['t'][1]) < 1e-10
    assert abs(image['mu'][1] - num['mu'][1]) < 1e-10
    assert abs(image['mu'][0] - lam * num['mu'][0]) < 1e-10


def test_order_two_closed_form():
    g = GL2Elem(1.05 + 0.1j, 0.08 - 0.05j)
    image = act(g, PT2).numeric()
    closed = closed_form_n2(g, PT2)
    assert abs(image['t'][1] - closed['t2']) < 1e-8
    assert abs(image['mu'][1] - closed['mu2']) < 1e-8


def test_leading_coefficient_scales_by_power_of_u2():
    g = GL2Elem(0.95 - 0.05j, 0.1 + 0.02j)
    image = act(g, PT3).numeric()
    tn = PT3.numeric()['t'][2]
    assert abs(image['t'][2] - leading_factor(g, PT3) ** 3 * tn) < 1e-8


def test_action_composes():
    g = GL2Elem(1.02 + 0.05j, 0.04 + 0.03j)
    h = GL2Elem(0.97 - 0.02j, -0.05 + 0.01j)
    for pt in (PT2, PT3):
        assert point_distance(act(g * h, pt), act(g, act(h, pt))) < 1e-8


def test_conjugate_coordinate_leading_term_is_unimodular():
    m = mbar_coeffs(PT3)
    assert abs(abs(m[0]) - 1) < 1e-12


def test_vanishing_tn_is_off_chart():
    with pytest.raises(ChartBoundaryError):
        act(GL2Elem.identity(), point([0, 0], [0, 0.2]))
