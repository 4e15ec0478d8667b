"""Differential operators sum c * N^a * Nb^b over the free differential ring.

N and Nb act on coefficients through the total derivations d and db:
N o c = c N + d(c), Nb o c = c Nb + db(c), and N Nb = Nb N.
"""
from math import comb
from typing import Dict, Iterator, Optional, Tuple

import sympy

from diffpois import Dn, render

Key = Tuple[int, int]


class DOp:
    """Right-normal differential operator: coefficients left, powers of N, Nb right."""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Dict[Key, sympy.Expr]] = None):
        self.terms: Dict[Key, sympy.Expr] = {}
        for key, c in (terms or {}).items():
            c = sympy.expand(c)
            if c != 0:
                self.terms[key] = c

    @classmethod
    def const(cls, c) -> 'DOp':
        return cls({(0, 0): sympy.sympify(c)})

    @classmethod
    def nabla(cls, a: int = 1, b: int = 0, c=1) -> 'DOp':
        return cls({(a, b): sympy.sympify(c)})

    def coeff(self, a: int, b: int = 0) -> sympy.Expr:
        return self.terms.get((a, b), sympy.Integer(0))

    def items(self) -> Iterator[Tuple[Key, sympy.Expr]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def degree(self) -> Key:
        if not self.terms:
            return (-1, -1)
        return (max(a for a, _ in self.terms), max(b for _, b in self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return not (self - _lift(other))

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other) -> 'DOp':
        other = _lift(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return DOp(terms)

    __radd__ = __add__

    def __neg__(self) -> 'DOp':
        return DOp({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> 'DOp':
        return self + (-_lift(other))

    def __rsub__(self, other) -> 'DOp':
        return _lift(other) - self

    def __mul__(self, c) -> 'DOp':
        """Left multiplication by a coefficient."""
        if isinstance(c, DOp):
            return compose(self, c)
        return DOp({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> 'DOp':
        return DOp({k: c * v for k, v in self.terms.items()})

    def __matmul__(self, other: 'DOp') -> 'DOp':
        return compose(self, other)

    def map(self, fn) -> 'DOp':
        return DOp({k: fn(v) for k, v in self.terms.items()})

    def to_text(self) -> str:
        if not self.terms:
            return '0'
        parts = []
        for (a, b), c in self.items():
            ops = []
            if a:
                ops.append('N' if a == 1 else f'N^{a}')
            if b:
                ops.append('Nb' if b == 1 else f'Nb^{b}')
            parts.append(f"({render(c)})" + ''.join('*' + o for o in ops))
        return ' + '.join(parts)

    def __repr__(self) -> str:
        return f"DOp({self.to_text()})"


def _lift(value) -> DOp:
    return value if isinstance(value, DOp) else DOp.const(value)


def _compose_terms(a1: int, b1: int, c1, a2: int, b2: int, c2) -> Dict[Key, sympy.Expr]:
    out: Dict[Key, sympy.Expr] = {}
    for i in range(a1 + 1):
        for j in range(b1 + 1):
            dc = Dn(c2, a1 - i, b1 - j)
            if dc == 0:
                continue
            key = (i + a2, j + b2)
            out[key] = out.get(key, 0) + comb(a1, i) * comb(b1, j) * c1 * dc
    return out


def compose(F: DOp, G: DOp) -> DOp:
    """F o G in right-normal form (Leibniz rule for N^a Nb^b o c)."""
    F, G = _lift(F), _lift(G)
    terms: Dict[Key, sympy.Expr] = {}
    for (a1, b1), c1 in F.terms.items():
        for (a2, b2), c2 in G.terms.items():
            for key, c in _compose_terms(a1, b1, c1, a2, b2, c2).items():
                terms[key] = terms.get(key, 0) + c
    return DOp(terms)


def commutator(F: DOp, G: DOp) -> DOp:
    return compose(F, G) - compose(G, F)


NABLA = DOp.nabla(1, 0)
NABLA_BAR = DOp.nabla(0, 1)
