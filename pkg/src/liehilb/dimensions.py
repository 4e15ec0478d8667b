"""Dimension counts: exponents, moduli of higher complex structures, spectral curve genus."""
from typing import Any, Dict, List

from core.errors import UsageError
from .types import LieType


def exponents(T: LieType) -> List[int]:
    r = T.rank
    if T.family == 'A':
        return list(range(1, r + 1))
    if T.family in ('B', 'C'):
        return list(range(1, 2 * r, 2))
    return sorted(list(range(1, 2 * r - 2, 2)) + [r - 1])


def _check_genus(g: int):
    if g < 2:
        raise UsageError(f"surface genus must be at least 2, got {g}")


def moduli_dimension(T: LieType, g: int) -> Dict[str, Any]:
    """(g-1) sum (2 m_i + 1), which equals (g-1) dim g."""
    _check_genus(g)
    value = (g - 1) * sum(2 * e + 1 for e in exponents(T))
    return {'type': T.name, 'genus': g, 'dimension': value, 'consistent': value == (g - 1) * T.dim}


def cotangent_dimensions(n: int, g: int) -> Dict[str, Any]:
    """dim H^0(K^m) = (2m - 1)(g - 1) for m = 2..n, summing to (n^2 - 1)(g - 1)."""
    _check_genus(g)
    if n < 2:
        raise UsageError(f"order n must be at least 2, got {n}")
    dims = {m: (2 * m - 1) * (g - 1) for m in range(2, n + 1)}
    total = sum(dims.values())
    return {'n': n, 'genus': g, 'dimensions': dims, 'total': total, 'consistent': total == (n * n - 1) * (g - 1)}


def spectral_curve_genus(n: int, g: int) -> Dict[str, Any]:
    _check_genus(g)
    genus = n * n * (g - 1) + 1
    periods_ok = 2 * genus - 2 * g == (2 * g - 2) * (n * n - 1)
    return {'n': n, 'genus': g, 'spectral_genus': genus, 'consistent': periods_ok}
