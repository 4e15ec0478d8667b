"""Condition (C), the spectral-curve bracket and involutivity checks."""
import logging
from typing import Any, Dict, List, Optional, Sequence

import sympy

from .bracket import poisson
from .reduction import (p_coefficients, reduce_by_rules, reduce_mod, reduce_mod_I, structure_P,
                        structure_Q)
from .symbols import D, Dbar, P, PBAR, field, fields, render, truncate_t2

logger = logging.getLogger(__name__)


def _at(values: Sequence, j: int, n: int):
    return values[j - 2] if 2 <= j <= n else sympy.Integer(0)


def condition_C_residual(n: int, mu: Sequence, t: Sequence) -> List[sympy.Expr]:
    """Entries for t_2..t_n of
    (-db + mu_2 d + k d mu_2) t_k + sum_l ((l+k) d mu_(l+2) + (l+1) mu_(l+2) d) t_(k+l).
    """
    residuals = []
    for k in range(2, n + 1):
        tk = _at(t, k, n)
        mu2 = _at(mu, 2, n)
        value = -Dbar(tk) + mu2 * D(tk) + k * tk * D(mu2)
        for l in range(1, n - k + 1):
            m = _at(mu, l + 2, n)
            tkl = _at(t, k + l, n)
            value += (l + k) * tkl * D(m) + (l + 1) * m * D(tkl)
        residuals.append(sympy.expand(value))
    return residuals


def default_mu1(n: int, mu: Sequence, t: Sequence) -> sympy.Expr:
    """mu_1 = -sum_k (k/n) t_k mu_(k+1), which puts the barycenter at the origin."""
    return sympy.expand(-sum((sympy.Rational(k, n) * _at(t, k, n) * _at(mu, k + 1, n)
                              for k in range(2, n)), sympy.Integer(0)))


def spectral_bracket(n: int, mu: Sequence, t: Sequence, mu1: Optional[Any] = None) -> Dict[int, sympy.Expr]:
    """Coefficients of {-p^n + P, -pbar + Q} modulo I and modulo t^2, keyed by p-power."""
    if mu1 is None:
        mu1 = default_mu1(n, mu, t)
    Pexpr = structure_P(n, t)
    Qexpr = structure_Q(n, mu, mu1)
    bracket = truncate_t2(poisson(-P ** n + Pexpr, -PBAR + Qexpr))
    reduced = reduce_mod(bracket, n, Pexpr, Qexpr, mod_t2=True)
    coeffs = p_coefficients(reduced)
    return {m: coeffs.get(m, sympy.Integer(0)) for m in range(n)}


def spectral_vs_condition(n: int, mu: Sequence, t: Sequence, mu1: Optional[Any] = None) -> Dict[str, Any]:
    """Compare the bracket coefficients with condition (C): [p^m] = -residual(t_(n-m))."""
    coeffs = spectral_bracket(n, mu, t, mu1)
    residuals = condition_C_residual(n, mu, t)
    mismatches = []
    for m in range(n - 1):
        k = n - m
        diff = sympy.expand(coeffs[m] + residuals[k - 2])
        if diff != 0:
            mismatches.append({'power': m, 'difference': render(diff)})
    top = coeffs[n - 1]
    return {
        'n': n,
        'top_coefficient': render(top),
        'top_vanishes': top == 0,
        'mismatches': mismatches,
        'status': 'pass' if top == 0 and not mismatches else 'fail'
    }


def simplification_check(n: int, H, g, which: int = 1) -> sympy.Expr:
    """{H + g f_which, f_2} - {H, f_2} modulo the zero-fiber ideal; must vanish."""
    mu = fields('mu', range(2, n + 1))
    generators = {0: P ** n, 1: -PBAR + structure_Q(n, mu)}
    target = generators[1]
    left = reduce_mod_I(poisson(H + g * generators[which], target), n, mu)
    right = reduce_mod_I(poisson(H, target), n, mu)
    return sympy.expand(left - right)


def dn_zero_fiber(n: int, mu: Optional[Sequence] = None, sigma=None):
    """Generators and rewrite rules of <p^(2n-1), p pbar - M(p), pbar^2 - N(p)> for D_n."""
    mu = list(mu) if mu is not None else [field(f'mu{2 * k}') for k in range(1, n)]
    sigma = sigma if sigma is not None else field(f'sigma{n}')
    M = sum((mu[k - 1] * P ** (2 * k) for k in range(1, n)), sympy.Integer(0))
    N = sympy.Integer(0)
    for k in range(1, n):
        nu = sum((mu[i - 1] * mu[k - i] for i in range(1, k + 1)), sympy.Integer(0))
        if k == n - 1:
            nu += 2 * sigma ** 2
        N += nu * P ** (2 * k)
    generators = [P ** (2 * n - 1), P * PBAR - M, PBAR ** 2 - N]
    rules = {(2 * n - 1, 0): sympy.Integer(0), (1, 1): sympy.expand(M), (0, 2): sympy.expand(N)}
    return generators, rules


def dn_bracket_closure(n: int) -> Dict[str, Any]:
    """{f_i, f_j} modulo the D_n zero-fiber ideal for all generator pairs."""
    generators, rules = dn_zero_fiber(n)
    failures = []
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            value = reduce_by_rules(poisson(generators[i], generators[j]), rules)
            if value != 0:
                failures.append({'pair': [i + 1, j + 1], 'residual': render(value)})
    return {'n': n, 'failures': failures, 'status': 'pass' if not failures else 'fail'}

