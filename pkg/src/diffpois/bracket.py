"""Canonical Poisson bracket on differential polynomials in (p, pbar)."""
import sympy

from .symbols import D, Dbar, P, PBAR


def poisson(F, G) -> sympy.Expr:
    """{F, G} = F_p dG - dF G_p + F_pbar dbG - dbF G_pbar."""
    F = sympy.sympify(F)
    G = sympy.sympify(G)
    result = (sympy.diff(F, P) * D(G) - D(F) * sympy.diff(G, P)
              + sympy.diff(F, PBAR) * Dbar(G) - Dbar(F) * sympy.diff(G, PBAR))
    return sympy.expand(result)
