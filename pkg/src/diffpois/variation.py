"""Variation of higher Beltrami differentials under a Hamiltonian."""
import logging
from typing import Dict, List, Sequence

import sympy

from .bracket import poisson
from .reduction import p_coefficients, reduce_mod_I, structure_Q
from .symbols import D, Dbar, PBAR, P, field, render

logger = logging.getLogger(__name__)


def vary_mu(n: int, mu: Sequence, H) -> Dict[int, sympy.Expr]:
    """delta mu_l for l = 2..n: bracket H with -pbar + Q and read the p^(l-1) coefficients.

    Works on the zero-fiber ideal <p^n, -pbar + Q> with mu_1 = 0; H is
    reduced modulo the ideal first (the ideal is involutive, so this does
    not change the result).
    """
    H = reduce_mod_I(H, n, mu)
    generator = -PBAR + structure_Q(n, mu)
    variation = reduce_mod_I(poisson(H, generator), n, mu)
    coeffs = p_coefficients(variation)
    if coeffs.get(0, 0) != 0:
        logger.debug("Hamiltonian moves mu_1: %s", render(coeffs[0]))
    return {l: coeffs.get(l - 1, sympy.Integer(0)) for l in range(2, n + 1)}


def varmu_oracle(n: int, mu: Sequence, k: int, v) -> Dict[int, sympy.Expr]:
    """Closed form of delta mu_l for H = v p^(k-1).

    l = k:  (db - mu_2 d + (k-1) d mu_2) v
    l > k:  (k-1) v d mu_(l-k+2) - (l-k+1) mu_(l-k+2) d v
    l < k:  0
    with mu_j = 0 for j > n.
    """
    def mu_at(j: int):
        return mu[j - 2] if 2 <= j <= n else sympy.Integer(0)

    result = {}
    for l in range(2, n + 1):
        if l < k:
            value = sympy.Integer(0)
        elif l == k:
            value = Dbar(v) - mu_at(2) * D(v) + (k - 1) * v * D(mu_at(2))
        else:
            j = l - k + 2
            value = (k - 1) * v * D(mu_at(j)) - (l - k + 1) * mu_at(j) * D(v)
        result[l] = sympy.expand(value)
    return result


def varmu_printed(n: int, mu: Sequence, k: int, v) -> Dict[int, sympy.Expr]:
    """The l > k branch with the index shift l - k + 1 / (l - k) as commonly printed."""
    def mu_at(j: int):
        return mu[j - 2] if 2 <= j <= n else sympy.Integer(0)

    result = varmu_oracle(n, mu, k, v)
    for l in range(k + 1, n + 1):
        j = l - k + 1
        result[l] = sympy.expand((k - 1) * v * D(mu_at(j)) - (l - k) * mu_at(j) * D(v))
    return result


def hamiltonian(k: int, base: str = 'v') -> sympy.Expr:
    """H = v_k p^(k-1)."""
    return field(f'{base}{k}') * P ** (k - 1)
