import pytest
import sympy

from core.errors import UsageError
from diffop import (DOp, NABLA, NABLA_BAR, a2_consistency, commutator, compose, confluence_defect,
                    curvature_semiclassical, hamiltonian_hat, parabolic_curvature, quantum_fields,
                    reduce_mod_left_ideal, semiclassical_variation, traceless_mu1)
from diffpois import D, Dbar, Dn, field


def test_leibniz_rule_in_right_normal_form():
    u = field('u')
    assert compose(NABLA, DOp.const(u)) == DOp({(1, 0): u, (0, 0): D(u)})
    assert compose(DOp.nabla(2), DOp.const(u)) == DOp({(2, 0): u, (1, 0): 2 * D(u), (0, 0): Dn(u, 2)})
    assert commutator(NABLA, NABLA_BAR) == 0


def test_operator_text():
    u = field('u')
    assert DOp.nabla(1, 1, u).to_text() == '(u)*N*Nb'
    assert DOp().to_text() == '0'


def test_traceless_constant_order_two():
    that, muhat = quantum_fields(2)
    assert sympy.expand(traceless_mu1(2, that, muhat) + D(muhat[0]) / 2) == 0


def test_reduction_replaces_nabla_bar():
    that, muhat = quantum_fields(2)
    mu1 = traceless_mu1(2, that, muhat)
    reduced = reduce_mod_left_ideal(NABLA_BAR, 2, that, muhat)
    assert reduced == DOp({(1, 0): muhat[0], (0, 0): mu1})
    assert reduce_mod_left_ideal(DOp.nabla(2), 2, that, muhat) == DOp.const(that[0])


def test_curvature_order_two_closed_form():
    that, muhat = quantum_fields(2)
    t, mu = that[0], muhat[0]
    [xi] = parabolic_curvature(2)
    closed = Dbar(t) - mu * D(t) - 2 * t * D(mu) + sympy.Rational(1, 2) * Dn(mu, 3)
    assert sympy.expand(xi - closed) == 0


def test_reduction_orders_differ_by_curvature():
    that, muhat = quantum_fields(2)
    [xi] = parabolic_curvature(2, that, muhat)
    defect = confluence_defect(DOp.nabla(2, 1), 2, that, muhat)
    assert sympy.expand(defect.coeff(0) + xi) == 0


@pytest.mark.parametrize('n', [2, 3])
def test_semiclassical_limit_is_condition_c(n):
    assert curvature_semiclassical(n)['status'] == 'pass'


def test_second_matrix_columns_are_consistent():
    that, muhat = quantum_fields(3)
    assert a2_consistency(3, that, muhat)['status'] == 'pass'


def test_gauge_variation_leading_order():
    assert semiclassical_variation(2, 2)['status'] == 'pass'
    assert semiclassical_variation(3, 3)['status'] == 'pass'


def test_hamiltonian_index_range():
    with pytest.raises(UsageError):
        hamiltonian_hat(2, 3)
