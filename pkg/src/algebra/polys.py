"""Multivariate polynomials over QQ(i) with a named variable registry.

Polynomials are sympy ``PolyElement`` values of a ``PolyRing`` over ``QQ_I``
in lex order, generators in registry order. Conjugate symbols such as
``mu2bar`` are independent indeterminates; the registry carries the formal
conjugation involution between them.
"""
import logging
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing, PolyElement
from sympy.polys.domains import QQ_I

from core.errors import UsageError
from .scalars import (conjugate, random_scalar, scalar_from_json, scalar_text,
                      scalar_to_json, to_scalar)

logger = logging.getLogger(__name__)

CONJ_SUFFIX = 'bar'


def conjugate_name(name: str) -> str:
    if name.endswith(CONJ_SUFFIX):
        return name[:-len(CONJ_SUFFIX)]
    return name + CONJ_SUFFIX


class Registry:
    """Ordered set of indeterminate names with the conjugation involution."""

    def __init__(self, names: Sequence[str]):
        names = list(names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in registry: {names}")
        self.names = names
        self.ring = PolyRing(names, QQ_I, lex)
        self.index = {name: i for i, name in enumerate(names)}

    @classmethod
    def with_conjugates(cls, names: Sequence[str], conjugated: Iterable[str]) -> 'Registry':
        names = list(names)
        for name in conjugated:
            partner = conjugate_name(name)
            if partner not in names:
                names.append(partner)
        return cls(names)

    def gen(self, name: str) -> PolyElement:
        try:
            return self.ring.gens[self.index[name]]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}; registry has {self.names}")

    def gens(self, *names: str) -> List[PolyElement]:
        return [self.gen(name) for name in names]

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def const(self, value) -> PolyElement:
        return self.ring.ground_new(to_scalar(value))

    def zero(self) -> PolyElement:
        return self.ring.zero

    def one(self) -> PolyElement:
        return self.ring.one

    def convert(self, poly: PolyElement) -> PolyElement:
        """Move a polynomial from a smaller registry into this one."""
        if poly.ring == self.ring:
            return poly
        result = {}
        for monom, coeff in poly.terms():
            exps = [0] * len(self.names)
            for name, e in zip(poly.ring.symbols, monom):
                if e:
                    exps[self.index[str(name)]] = e
            result[tuple(exps)] = coeff
        return self.ring.from_dict(result) if result else self.ring.zero

    def from_expr(self, expr) -> PolyElement:
        expr = sympy.sympify(expr)
        unknown = {str(s) for s in expr.free_symbols} - set(self.names)
        if unknown:
            raise UsageError(f"expression uses variables outside the registry: {sorted(unknown)}")
        return self.ring.from_expr(expr)

    def parse(self, text: str) -> PolyElement:
        try:
            expr = sympy.sympify(text.replace('^', '**'), locals={n: sympy.Symbol(n) for n in self.names})
        except sympy.SympifyError as e:
            raise UsageError(f"cannot parse polynomial {text!r}: {e}")
        return self.from_expr(expr)

    def conjugate(self, poly: PolyElement) -> PolyElement:
        """Apply the formal conjugation: swap name/namebar and conjugate coefficients."""
        perm = []
        for name in self.names:
            partner = conjugate_name(name)
            if partner not in self.index:
                raise UsageError(f"registry lacks the conjugate partner of {name!r}")
            perm.append(self.index[partner])
        result = {}
        for monom, coeff in poly.terms():
            exps = [0] * len(self.names)
            for i, e in enumerate(monom):
                exps[perm[i]] += e
            result[tuple(exps)] = conjugate(coeff)
        return self.ring.from_dict(result) if result else self.ring.zero


def poly_vars(poly: PolyElement) -> List[str]:
    used = set()
    for monom in poly.monoms():
        used.update(i for i, e in enumerate(monom) if e)
    return [str(poly.ring.symbols[i]) for i in sorted(used)]


def degree_in(poly: PolyElement, index: int) -> int:
    if not poly:
        return -1
    return max(monom[index] for monom in poly.monoms())


def coeffs_in(poly: PolyElement, index: int) -> Dict[int, PolyElement]:
    """Split a polynomial as sum of c_k * v^k with v the generator at ``index``."""
    ring = poly.ring
    parts: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for monom, coeff in poly.terms():
        k = monom[index]
        rest = list(monom)
        rest[index] = 0
        parts.setdefault(k, {})[tuple(rest)] = coeff
    return {k: ring.from_dict(terms) for k, terms in parts.items()}


def coeff_list(poly: PolyElement, index: int) -> List[PolyElement]:
    """Coefficients with respect to one generator, highest degree first."""
    parts = coeffs_in(poly, index)
    deg = max(parts) if parts else -1
    return [parts.get(k, poly.ring.zero) for k in range(deg, -1, -1)]


def evaluate(poly: PolyElement, values: Dict[str, object]):
    """Substitute exact values for some generators; returns a polynomial."""
    ring = poly.ring
    subs = [(ring.gens[ring.symbols.index(sympy.Symbol(name))], to_scalar(v)) for name, v in values.items()]
    result = poly
    for gen, value in subs:
        result = result.subs(gen, value) if result else result
    return result


def constant_value(poly: PolyElement):
    """Ground-domain value of a constant polynomial."""
    if not poly:
        return QQ_I.zero
    if any(any(m) for m in poly.monoms()):
        raise UsageError(f"polynomial {poly_to_text(poly)} is not constant")
    return poly.coeff(1)


def _monomial_text(symbols, monom) -> str:
    parts = []
    for sym, e in zip(symbols, monom):
        if e == 1:
            parts.append(str(sym))
        elif e > 1:
            parts.append(f"{sym}^{e}")
    return '*'.join(parts)


def poly_to_text(poly: PolyElement) -> str:
    """Canonical text form ``coeff * var1^e1*var2^e2 + ...`` in registry order."""
    if not poly:
        return '0'
    chunks = []
    for monom, coeff in sorted(poly.terms(), key=lambda mc: mc[0], reverse=True):
        mono = _monomial_text(poly.ring.symbols, monom)
        coeff_text = scalar_text(coeff)
        if not mono:
            chunks.append(coeff_text)
        else:
            chunks.append(f"{coeff_text} * {mono}")
    return ' + '.join(chunks)


def poly_to_json(poly: PolyElement) -> Dict[str, object]:
    terms = []
    for monom, coeff in sorted(poly.terms(), key=lambda mc: mc[0], reverse=True):
        entry = {'exp': list(monom)}
        entry.update(scalar_to_json(coeff))
        terms.append(entry)
    return {'vars': [str(s) for s in poly.ring.symbols], 'terms': terms}


def poly_from_json(data: Dict[str, object], registry: Optional[Registry] = None) -> PolyElement:
    names = data.get('vars')
    if not isinstance(names, list):
        raise UsageError("polynomial JSON needs a 'vars' list")
    local = Registry(names)
    result = {}
    for term in data.get('terms', []):
        exps = term.get('exp')
        if not isinstance(exps, list) or len(exps) != len(names):
            raise UsageError(f"exponent vector {exps!r} does not match vars {names}")
        coeff = scalar_from_json(term)
        if coeff:
            result[tuple(int(e) for e in exps)] = coeff
    poly = local.ring.from_dict(result) if result else local.ring.zero
    return registry.convert(poly) if registry is not None else poly


def random_poly(registry: Registry, names: Sequence[str], degree: int, terms: int,
                rng: random.Random) -> PolyElement:
    """Random exact polynomial in the given variables, used by ring-axiom checks."""
    gens = registry.gens(*names)
    result = registry.zero()
    for _ in range(terms):
        mono = registry.const(random_scalar(rng))
        for gen in gens:
            mono = mono * gen ** rng.randint(0, degree)
        result = result + mono
    return result
