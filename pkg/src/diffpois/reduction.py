"""Normal forms modulo <p^n - P(p), -pbar + Q(p)> and declared rewrite systems."""
import logging
from typing import Dict, Optional, Sequence, Tuple

import sympy

from core.errors import InternalError, UsageError
from .symbols import P, PBAR, truncate_t2

logger = logging.getLogger(__name__)


def p_coefficients(expr, var: sympy.Symbol = P) -> Dict[int, sympy.Expr]:
    expr = sympy.expand(expr)
    if expr == 0:
        return {}
    poly = sympy.Poly(expr, var)
    return {m[0]: sympy.expand(c) for m, c in zip(poly.monoms(), poly.coeffs())}


def from_coefficients(coeffs: Dict[int, sympy.Expr], var: sympy.Symbol = P) -> sympy.Expr:
    return sympy.expand(sum((c * var ** k for k, c in coeffs.items()), sympy.Integer(0)))


def structure_P(n: int, t: Optional[Sequence] = None, t1=0) -> sympy.Expr:
    """P = t_1 p^(n-1) + t_2 p^(n-2) + ... + t_n; ``t`` lists t_2..t_n."""
    if not t:
        return sympy.sympify(t1) * P ** (n - 1)
    if len(t) != n - 1:
        raise UsageError(f"expected {n - 1} values t_2..t_{n}, got {len(t)}")
    total = sympy.sympify(t1) * P ** (n - 1)
    for k, tk in enumerate(t, start=2):
        total += tk * P ** (n - k)
    return sympy.expand(total)


def structure_Q(n: int, mu: Sequence, mu1=0) -> sympy.Expr:
    """Q = mu_1 + mu_2 p + ... + mu_n p^(n-1); ``mu`` lists mu_2..mu_n."""
    if len(mu) != n - 1:
        raise UsageError(f"expected {n - 1} values mu_2..mu_{n}, got {len(mu)}")
    total = sympy.sympify(mu1)
    for k, mk in enumerate(mu, start=2):
        total += mk * P ** (k - 1)
    return sympy.expand(total)


def reduce_p(expr, n: int, Pexpr=0) -> sympy.Expr:
    """Lower p-powers >= n with p^n -> P(p)."""
    coeffs = p_coefficients(expr)
    if not coeffs or max(coeffs) < n:
        return sympy.expand(expr)
    lower = p_coefficients(Pexpr)
    if lower and max(lower) >= n:
        raise UsageError("P must have p-degree below n")
    for d in range(max(coeffs), n - 1, -1):
        c = coeffs.pop(d, 0)
        if c == 0:
            continue
        for k, pk in lower.items():
            target = d - n + k
            coeffs[target] = sympy.expand(coeffs.get(target, 0) + c * pk)
    return from_coefficients(coeffs)


def _fiber_degree(expr) -> int:
    expr = sympy.expand(expr)
    if expr == 0:
        return 0
    return int(sympy.Poly(expr, P, PBAR).total_degree())


def reduce_mod(expr, n: int, Pexpr, Qexpr, mod_t2: bool = False) -> sympy.Expr:
    """Substitute pbar -> Q to a fixed point, reducing p-powers in between."""
    expr = sympy.expand(expr)
    guard = n * max(_fiber_degree(expr), 1) + 1
    for _ in range(guard + 1):
        expr = reduce_p(expr, n, Pexpr)
        if mod_t2:
            expr = truncate_t2(expr)
        if PBAR not in expr.free_symbols:
            return expr
        expr = sympy.expand(expr.subs(PBAR, Qexpr))
    raise InternalError("pbar substitution did not reach a fixed point",
                        {'n': n, 'depth': guard})


def reduce_mod_I(expr, n: int, mu: Sequence, t: Optional[Sequence] = None, mu1=0,
                 mod_t2: bool = False) -> sympy.Expr:
    """Normal form modulo I = <p^n - P, -pbar + Q>; result has p-degree < n and no pbar."""
    return reduce_mod(expr, n, structure_P(n, t), structure_Q(n, mu, mu1), mod_t2)


def reduce_by_rules(expr, rules: Dict[Tuple[int, int], sympy.Expr], guard: int = 100000) -> sympy.Expr:
    """Rewrite p^a pbar^b -> rules[(a, b)] until no monomial is divisible by a rule head.

    When several heads divide a monomial, vanishing rules fire first, then
    pure p-power rules, then the rest in sorted order.
    """
    heads = sorted(rules, key=lambda h: (sympy.sympify(rules[h]) != 0, h[1] > 0, h))
    result = sympy.Integer(0)
    work = sympy.expand(expr)
    steps = 0
    while work != 0:
        poly = sympy.Poly(work, P, PBAR)
        changed = sympy.Integer(0)
        for (a, b), coeff in zip(poly.monoms(), poly.coeffs()):
            head = next(((i, j) for i, j in heads if a >= i and b >= j), None)
            if head is None:
                result += coeff * P ** a * PBAR ** b
            else:
                changed += coeff * P ** (a - head[0]) * PBAR ** (b - head[1]) * rules[head]
                steps += 1
        if steps > guard:
            raise InternalError("rewrite rules did not terminate", {'heads': [list(h) for h in heads]})
        work = sympy.expand(changed)
    return sympy.expand(result)
