"""Parabolic connections: the left ideal <N^n - P, -Nb + Q>, curvature and gauge variations."""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from core.errors import InternalError, UsageError
from diffpois import (condition_C_residual, field, fields, hamiltonian, render, truncate_derivatives,
                      truncate_t2, vary_mu)
from .operators import DOp, NABLA, NABLA_BAR, compose, commutator

logger = logging.getLogger(__name__)

ORDERS = ('bar-first', 'nabla-first')
REDUCTION_GUARD = 20000


def quantum_fields(n: int) -> Tuple[List[sympy.Symbol], List[sympy.Symbol]]:
    """(that_2..that_n, muhat_2..muhat_n)."""
    return fields('that', range(2, n + 1)), fields('muhat', range(2, n + 1))


def structure_Phat(n: int, that: Sequence) -> DOp:
    """P = sum_{k>=2} that_k N^(n-k); that lists that_2..that_n."""
    if len(that) != n - 1:
        raise UsageError(f"expected {n - 1} that values, got {len(that)}")
    return sum((DOp.nabla(n - k, 0, that[k - 2]) for k in range(2, n + 1)), DOp())


def structure_Qhat(n: int, muhat: Sequence, mu1hat=0) -> DOp:
    """Q = mu1hat + sum_{k>=2} muhat_k N^(k-1)."""
    if len(muhat) != n - 1:
        raise UsageError(f"expected {n - 1} muhat values, got {len(muhat)}")
    op = DOp.const(mu1hat)
    for k in range(2, n + 1):
        op = op + DOp.nabla(k - 1, 0, muhat[k - 2])
    return op


def _rewrite(F: DOp, n: int, Phat: DOp, Qhat: DOp, order: str) -> DOp:
    if order not in ORDERS:
        raise UsageError(f"unknown reduction order {order!r}; expected one of {ORDERS}")
    pending: Dict[Tuple[int, int], sympy.Expr] = dict(F.terms)
    done: Dict[Tuple[int, int], sympy.Expr] = {}
    steps = 0
    while pending:
        steps += 1
        if steps > REDUCTION_GUARD:
            raise InternalError("left-ideal reduction did not terminate", {'n': n, 'order': order})
        key = max(pending, key=lambda k: (k[1], k[0]))
        c = pending.pop(key)
        c = sympy.expand(c)
        if c == 0:
            continue
        a, b = key
        use_bar = b >= 1 and (order == 'bar-first' or a < n)
        if use_bar:
            image = compose(DOp.nabla(a, b - 1), Qhat)
        elif a >= n:
            image = compose(DOp.nabla(a - n, b), Phat)
        else:
            done[key] = done.get(key, 0) + c
            continue
        for k2, c2 in image.terms.items():
            pending[k2] = pending.get(k2, 0) + c * c2
    return DOp(done)


def reduce_mod_left_ideal(F: DOp, n: int, that: Sequence, muhat: Sequence, mu1hat=None,
                          order: str = 'bar-first') -> DOp:
    """Normal form of F modulo <N^n - P, -Nb + Q>: no Nb and N-degree below n.

    With mu1hat None the traceless value is used.
    """
    if mu1hat is None:
        mu1hat = traceless_mu1(n, that, muhat)
    return _rewrite(F, n, structure_Phat(n, that), structure_Qhat(n, muhat, mu1hat), order)


def _reduce_nabla(F: DOp, n: int, Phat: DOp) -> DOp:
    return _rewrite(F, n, Phat, DOp(), 'nabla-first')


def traceless_constant(n: int, op: DOp, that: Sequence) -> sympy.Expr:
    """c such that s -> (op + c) acting on (s, N s, .., N^(n-1) s) is traceless.

    ``op`` must not involve Nb; column j of its matrix is reduce(N^j o op).
    """
    Phat = structure_Phat(n, that)
    trace = sympy.Integer(0)
    for j in range(n):
        trace += _reduce_nabla(compose(DOp.nabla(j), op), n, Phat).coeff(j)
    return sympy.expand(-trace / n)


def traceless_mu1(n: int, that: Sequence, muhat: Sequence) -> sympy.Expr:
    return traceless_constant(n, structure_Qhat(n, muhat, 0), that)


def a2_columns(n: int, that: Sequence, muhat: Sequence, mu1hat=None) -> List[List[sympy.Expr]]:
    """Column k holds the coefficients of reduce(N^k o Q) on (1, N, .., N^(n-1))."""
    if mu1hat is None:
        mu1hat = traceless_mu1(n, that, muhat)
    Phat, Qhat = structure_Phat(n, that), structure_Qhat(n, muhat, mu1hat)
    columns = []
    for k in range(n):
        reduced = _reduce_nabla(compose(DOp.nabla(k), Qhat), n, Phat)
        columns.append([reduced.coeff(i) for i in range(n)])
    return columns


def a2_consistency(n: int, that: Sequence, muhat: Sequence) -> Dict[str, object]:
    """Column k+1 equals N applied to column k for k + 1 <= n - 1."""
    mu1hat = traceless_mu1(n, that, muhat)
    Phat = structure_Phat(n, that)
    columns = a2_columns(n, that, muhat, mu1hat)
    defects = []
    for k in range(n - 1):
        previous = sum((DOp.nabla(i, 0, c) for i, c in enumerate(columns[k])), DOp())
        image = _reduce_nabla(compose(NABLA, previous), n, Phat)
        diff = [sympy.expand(image.coeff(i) - columns[k + 1][i]) for i in range(n)]
        if any(d != 0 for d in diff):
            defects.append({'column': k + 1, 'difference': [render(d) for d in diff]})
    trace = sympy.expand(sum(columns[j][j] for j in range(n)))
    return {'n': n, 'trace': render(trace), 'defects': defects,
            'status': 'pass' if not defects and trace == 0 else 'fail'}


def _raw_curvature(n: int, that: Sequence, muhat: Sequence, mu1hat) -> DOp:
    Phat, Qhat = structure_Phat(n, that), structure_Qhat(n, muhat, mu1hat)
    lhs = _rewrite(compose(DOp.nabla(n), Qhat), n, Phat, Qhat, 'bar-first')
    rhs = _rewrite(compose(NABLA_BAR, Phat), n, Phat, Qhat, 'bar-first')
    return lhs - rhs


def parabolic_curvature(n: int, that: Optional[Sequence] = None, muhat: Optional[Sequence] = None,
                        mu1hat=None) -> List[sympy.Expr]:
    """xi_2..xi_n with [N^n, Nb] s = sum xi_k N^(n-k) s modulo the left ideal.

    Without explicit fields the generic jets that_k, muhat_k are used.
    """
    if that is None or muhat is None:
        that, muhat = quantum_fields(n)
    if mu1hat is None:
        mu1hat = traceless_mu1(n, that, muhat)
    raw = _raw_curvature(n, that, muhat, mu1hat)
    top = raw.coeff(n - 1)
    if top != 0:
        logger.debug("Curvature has an N^(n-1) component: %s", render(top))
    return [sympy.expand(-raw.coeff(n - k)) for k in range(2, n + 1)]


def curvature_semiclassical(n: int) -> Dict[str, object]:
    """xi_k modulo that^2 and modulo d^2 against -condition (C) for the same fields."""
    that, muhat = quantum_fields(n)
    xi = parabolic_curvature(n, that, muhat)
    residuals = condition_C_residual(n, muhat, that)
    mismatches = []
    for k, (x, r) in enumerate(zip(xi, residuals), start=2):
        diff = sympy.expand(truncate_t2(truncate_derivatives(x, 1)) + r)
        if diff != 0:
            logger.warning("Semiclassical curvature differs from condition (C) at k=%d: %s vs %s",
                           k, render(truncate_t2(truncate_derivatives(x, 1))), render(-r))
            mismatches.append({'k': k, 'difference': render(diff)})
    return {'n': n, 'xi': {f'xi{k}': render(x) for k, x in enumerate(xi, start=2)},
            'mismatches': mismatches, 'status': 'pass' if not mismatches else 'fail'}


def confluence_defect(F: DOp, n: int, that: Sequence, muhat: Sequence, mu1hat=None) -> DOp:
    """Difference of the two reduction orders; lies in the span of the curvature."""
    if mu1hat is None:
        mu1hat = traceless_mu1(n, that, muhat)
    first = reduce_mod_left_ideal(F, n, that, muhat, mu1hat, 'bar-first')
    second = reduce_mod_left_ideal(F, n, that, muhat, mu1hat, 'nabla-first')
    return first - second


def hamiltonian_hat(n: int, k: int, that: Optional[Sequence] = None, base: str = 'vhat') -> DOp:
    """H = v1hat + vhat_k N^(k-1) with v1hat fixed by tracelessness."""
    if not 2 <= k <= n:
        raise UsageError(f"Hamiltonian index {k} outside 2..{n}")
    if that is None:
        that = [sympy.Integer(0)] * (n - 1)
    op = DOp.nabla(k - 1, 0, field(f'{base}{k}'))
    return op + traceless_constant(n, op, that)


def gauge_vary(n: int, that: Sequence, muhat: Sequence, Hhat: DOp,
               mu1hat=None) -> Tuple[List[sympy.Expr], List[sympy.Expr]]:
    """(delta that_2..n, delta muhat_2..n) from [H, -N^n + P] and [H, -Nb + Q] modulo the ideal."""
    if mu1hat is None:
        mu1hat = traceless_mu1(n, that, muhat)
    Phat, Qhat = structure_Phat(n, that), structure_Qhat(n, muhat, mu1hat)
    dP = _rewrite(commutator(Hhat, Phat - DOp.nabla(n)), n, Phat, Qhat, 'bar-first')
    dQ = _rewrite(commutator(Hhat, Qhat - NABLA_BAR), n, Phat, Qhat, 'bar-first')
    dt = [dP.coeff(n - k) for k in range(2, n + 1)]
    dmu = [dQ.coeff(k - 1) for k in range(2, n + 1)]
    return dt, dmu


def semiclassical_variation(n: int, k: int) -> Dict[str, object]:
    """Leading order of delta muhat for H = vhat_k N^(k-1) on the zero fiber against vary_mu."""
    zeros = [sympy.Integer(0)] * (n - 1)
    _, muhat = quantum_fields(n)
    H = hamiltonian_hat(n, k, zeros)
    _, dmu = gauge_vary(n, zeros, muhat, H)
    classical = vary_mu(n, muhat, hamiltonian(k, 'vhat'))
    mismatches = []
    for l, quantum in enumerate(dmu, start=2):
        diff = sympy.expand(truncate_derivatives(quantum, 1) - truncate_derivatives(classical[l], 1))
        if diff != 0:
            logger.warning("Semiclassical variation differs for l=%d: %s vs %s", l,
                           render(truncate_derivatives(quantum, 1)), render(classical[l]))
            mismatches.append({'l': l, 'difference': render(diff)})
    return {'n': n, 'k': k, 'mismatches': mismatches, 'status': 'pass' if not mismatches else 'fail'}
