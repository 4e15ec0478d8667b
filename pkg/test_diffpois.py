import pytest
import sympy

from core.errors import UsageError
from diffpois import (D, Dbar, Dn, P, PBAR, condition_C_residual, dn_bracket_closure, field, fields, hamiltonian,
                      jet, jet_info, poisson, reduce_by_rules, reduce_mod_I, render, simplification_check,
                      spectral_vs_condition, structure_Q, truncate_derivatives, truncate_t2, vary_mu,
                      varmu_oracle, varmu_printed)


def test_total_derivative_follows_leibniz():
    u, v = field('u'), field('v')
    assert D(u) == jet('u', 1, 0)
    assert D(u * v) == sympy.expand(D(u) * v + u * D(v))
    assert Dn(u, 2, 1) == jet('u', 2, 1)
    assert D(P * u) == P * D(u)


def test_render_uses_derivative_prefixes():
    assert render(D(field('mu2'))) == 'd(mu2)'
    assert render(Dn(field('t3'), 0, 2)) == 'db^2(t3)'


def test_canonical_bracket_on_coordinates():
    u = field('u')
    assert poisson(P, u) == D(u)
    assert poisson(PBAR, u) == Dbar(u)
    assert poisson(u, u) == 0


def test_normal_form_modulo_ideal():
    t2, mu2 = field('t2'), field('mu2')
    assert reduce_mod_I(P ** 2, 2, [mu2], [t2]) == t2
    assert reduce_mod_I(PBAR, 2, [mu2]) == mu2 * P
    assert reduce_mod_I(P * PBAR, 2, [mu2], [t2]) == mu2 * t2
    with pytest.raises(UsageError):
        structure_Q(3, [mu2])


def test_rewrite_rules():
    u = field('u')
    assert reduce_by_rules(P ** 3, {(2, 0): u}) == u * P
    assert reduce_by_rules(P * PBAR + P, {(1, 1): sympy.Integer(0)}) == P


def test_rewrite_rules_with_nilpotent_p():
    a, b = field('a'), field('b')
    rules = {(0, 1): a * P + b * P * PBAR, (4, 0): sympy.Integer(0)}
    expected = sympy.expand(a * P + a * b * P ** 2 + a * b ** 2 * P ** 3)
    assert reduce_by_rules(PBAR, rules, guard=200) == expected


def test_truncations():
    t2, t3, u = field('t2'), field('t3'), field('u')
    assert truncate_t2(t2 * t3 + t2 * u + D(t2) * t3) == t2 * u
    assert truncate_derivatives(D(u) * D(t2) + D(u) * t2) == D(u) * t2


def test_variation_matches_closed_form():
    n = 3
    mu = fields('mu', range(2, n + 1))
    for k in range(2, n + 1):
        computed = vary_mu(n, mu, hamiltonian(k))
        expected = varmu_oracle(n, mu, k, field(f'v{k}'))
        assert all(sympy.expand(computed[l] - expected[l]) == 0 for l in computed)


def test_beltrami_variation_for_quadratic_hamiltonian():
    mu2 = field('mu2')
    v = field('v2')
    delta = vary_mu(2, [mu2], hamiltonian(2))
    assert sympy.expand(delta[2] - (Dbar(v) - mu2 * D(v) + v * D(mu2))) == 0


def test_printed_index_shift_is_not_the_bracket():
    mu = fields('mu', range(2, 4))
    printed = varmu_printed(3, mu, 2, field('v2'))
    computed = vary_mu(3, mu, hamiltonian(2))
    assert sympy.expand(printed[3] - computed[3]) != 0


def test_higher_hamiltonian_acts_trivially():
    mu = fields('mu', range(2, 4))
    assert all(v == 0 for v in vary_mu(3, mu, hamiltonian(4)).values())


def test_ideal_multiples_do_not_change_the_flow():
    for which in (0, 1):
        assert simplification_check(3, hamiltonian(3), field('g'), which) == 0


def test_condition_c_for_order_two():
    mu2, t2 = field('mu2'), field('t2')
    [residual] = condition_C_residual(2, [mu2], [t2])
    assert sympy.expand(residual - (-Dbar(t2) + mu2 * D(t2) + 2 * t2 * D(mu2))) == 0


@pytest.mark.parametrize('n', [2, 3])
def test_spectral_bracket_reproduces_condition_c(n):
    mu = fields('mu', range(2, n + 1))
    t = fields('t', range(2, n + 1))
    report = spectral_vs_condition(n, mu, t)
    assert report['status'] == 'pass'
    assert report['top_vanishes']


def test_dn_zero_fiber_is_closed_under_the_bracket():
    assert dn_bracket_closure(3)['status'] == 'pass'


def test_jet_info_names_derivative_orders():
    assert jet_info(jet('u', 2, 1)) == ('u', 2, 1)
    assert jet_info(field('v')) == ('v', 0, 0)
    assert jet_info(sympy.Symbol('q')) is None
