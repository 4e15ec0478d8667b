"""Jet symbols of the free differential ring and the total derivations d, db."""
import threading
from typing import Dict, Iterable, Optional, Tuple

import sympy

P = sympy.Symbol('p')
PBAR = sympy.Symbol('pbar')

_lock = threading.Lock()
_JETS: Dict[sympy.Symbol, Tuple[str, int, int]] = {}


def jet(base: str, a: int = 0, b: int = 0) -> sympy.Symbol:
    """Symbol for d^a db^b applied to the field ``base``."""
    symbol = sympy.Symbol(f'{base}_z{a}_zb{b}')
    with _lock:
        _JETS.setdefault(symbol, (base, a, b))
    return symbol


def jet_info(symbol: sympy.Symbol) -> Optional[Tuple[str, int, int]]:
    return _JETS.get(symbol)


def field(base: str) -> sympy.Symbol:
    return jet(base, 0, 0)


def fields(prefix: str, indices: Iterable[int]):
    return [field(f'{prefix}{k}') for k in indices]


def D(expr, bar: bool = False) -> sympy.Expr:
    """Total derivative d (or db) acting on coefficients; p and pbar are constants."""
    expr = sympy.sympify(expr)
    result = sympy.Integer(0)
    for symbol in expr.free_symbols:
        info = _JETS.get(symbol)
        if info is None:
            continue
        base, a, b = info
        nxt = jet(base, a, b + 1) if bar else jet(base, a + 1, b)
        result += sympy.diff(expr, symbol) * nxt
    return sympy.expand(result)


def Dbar(expr) -> sympy.Expr:
    return D(expr, bar=True)


def Dn(expr, a: int = 1, b: int = 0) -> sympy.Expr:
    for _ in range(a):
        expr = D(expr)
    for _ in range(b):
        expr = Dbar(expr)
    return sympy.expand(expr)


def _term_degree(term: sympy.Expr, predicate) -> int:
    degree = 0
    for base, exp in term.as_powers_dict().items():
        if isinstance(base, sympy.Symbol) and predicate(base):
            degree += int(exp)
    return degree


def is_t_symbol(symbol: sympy.Symbol) -> bool:
    info = _JETS.get(symbol)
    name = info[0] if info else symbol.name
    return name.startswith('t') or name.startswith('that')


def truncate_t2(expr, predicate=is_t_symbol) -> sympy.Expr:
    """Drop every term at least quadratic in the nilpotent t-symbols and their derivatives."""
    expr = sympy.expand(expr)
    kept = [term for term in sympy.Add.make_args(expr) if _term_degree(term, predicate) < 2]
    return sympy.Add(*kept)


def derivative_weight(term: sympy.Expr) -> int:
    """Total number of base derivatives d, db in a monomial."""
    weight = 0
    for base, exp in term.as_powers_dict().items():
        info = _JETS.get(base) if isinstance(base, sympy.Symbol) else None
        if info:
            weight += (info[1] + info[2]) * int(exp)
    return weight


def truncate_derivatives(expr, max_weight: int = 1) -> sympy.Expr:
    """Keep monomials with at most ``max_weight`` base derivatives (the mod d^2 filter)."""
    expr = sympy.expand(expr)
    kept = [term for term in sympy.Add.make_args(expr) if derivative_weight(term) <= max_weight]
    return sympy.Add(*kept)


def _prefix(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append('d' if a == 1 else f'd^{a}')
    if b:
        parts.append('db' if b == 1 else f'db^{b}')
    return ' '.join(parts)


def render(expr) -> str:
    """Text with d / db prefixes: mu2_z1_zb0 -> d(mu2)."""
    expr = sympy.sympify(expr)
    names = {}
    for symbol in expr.free_symbols:
        info = _JETS.get(symbol)
        if info is None:
            continue
        base, a, b = info
        prefix = _prefix(a, b)
        names[symbol] = sympy.Symbol(f'{prefix}({base})' if prefix else base)
    return str(expr.xreplace(names))
