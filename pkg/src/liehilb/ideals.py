"""Idealic map of the principal slice: I(A, B) = {P in C[x, y] : P(A, B) = 0}."""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement

from algebra import Registry, scalar_text, to_scalar, to_sympy
from core.errors import NonGenericConfigurationError
from hilbert import Ideal
from .hilb import SlicePoint, dn_relations
from .types import LieType, Matrix, family_charpoly, mat_pow

logger = logging.getLogger(__name__)

XY = Registry(['x', 'y'])
LIMIT_PARAMETER = sympy.Symbol('epsilon')

Monomial = Tuple[int, int]


def _sym(M: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(v) for v in row] for row in M])


def _vec(M: sympy.Matrix) -> sympy.Matrix:
    return M.reshape(M.rows * M.cols, 1)


def _limit(expr: sympy.Expr, symbol: Optional[sympy.Symbol]) -> sympy.Expr:
    expr = sympy.cancel(expr)
    if symbol is None or symbol not in expr.free_symbols:
        return expr
    num, den = sympy.fraction(expr)
    if den.subs(symbol, 0) != 0:
        return sympy.expand(expr.subs(symbol, 0))
    return sympy.limit(expr, symbol, 0)


@dataclass
class AnnihilatorScan:
    basis: List[Monomial]
    relations: Dict[Monomial, Dict[Monomial, sympy.Expr]] = field(default_factory=dict)


def _scan(A: sympy.Matrix, B: sympy.Matrix, symbol: Optional[sympy.Symbol] = None) -> AnnihilatorScan:
    """Column scan over x^i y^j, j outer; keeps independent monomials, records the first
    dependent monomial of each column as a relation."""
    m = A.rows
    basis: List[Monomial] = []
    columns: List[sympy.Matrix] = []
    relations: Dict[Monomial, Dict[Monomial, sympy.Expr]] = {}
    Bj = sympy.eye(m)
    for j in range(m + 1):
        word = Bj
        for i in range(m + 1):
            v = _vec(word)
            if not columns:
                independent = any(e != 0 for e in v)
            else:
                stacked = sympy.Matrix.hstack(*columns, v)
                independent = stacked.rank(simplify=True) > len(columns)
            if independent:
                basis.append((i, j))
                columns.append(v)
                word = A * word
                continue
            if columns:
                system = sympy.Matrix.hstack(*columns)
                solution, params = system.gauss_jordan_solve(v)
                if params.shape[0]:
                    solution = solution.subs({p: 0 for p in params})
                coeffs = {mono: _limit(c, symbol) for mono, c in zip(basis, solution)}
            else:
                coeffs = {}
            relations[(i, j)] = coeffs
            break
        if (0, j) in relations:
            break
        Bj = Bj * B
    return AnnihilatorScan(basis, relations)


def _relation_poly(mono: Monomial, coeffs: Dict[Monomial, sympy.Expr]) -> PolyElement:
    x, y = XY.gen('x'), XY.gen('y')
    poly = x ** mono[0] * y ** mono[1]
    for (a, b), c in coeffs.items():
        if c != 0:
            poly -= XY.const(to_scalar(c)) * x ** a * y ** b
    return poly


def annihilator(A: Matrix, B: Matrix, limit_direction: Optional[Matrix] = None) -> Tuple[Ideal, List[Monomial]]:
    """I(A, B) by the monomial dependency scan; with ``limit_direction`` D the ideal is
    the limit of I(A, B + eps D) as eps -> 0."""
    As, Bs = _sym(A), _sym(B)
    symbol = None
    if limit_direction is not None:
        symbol = LIMIT_PARAMETER
        Bs = Bs + symbol * _sym(limit_direction)
    scan = _scan(As, Bs, symbol)
    generators = [_relation_poly(mono, coeffs) for mono, coeffs in scan.relations.items()]
    logger.debug("Annihilator scan: %d standard monomials, %d relations", len(scan.basis), len(generators))
    return Ideal(generators, n=len(scan.basis)), scan.basis


def annihilator_ideal(A: Matrix, B: Matrix, limit_direction: Optional[Matrix] = None) -> Ideal:
    """Idealic map of any cyclic commuting pair."""
    return annihilator(A, B, limit_direction)[0]


def negate_xy(poly: PolyElement) -> PolyElement:
    """g(x, y) -> g(-x, -y)."""
    terms = {mono: (coeff if (mono[0] + mono[1]) % 2 == 0 else -coeff) for mono, coeff in poly.terms()}
    return XY.ring.from_dict(terms) if terms else XY.zero()


def minus_id_invariant(ideal: Ideal) -> bool:
    return all(ideal.contains(negate_xy(g)) for g in ideal.generators)


def ideals_equal(first: Ideal, second: Ideal) -> bool:
    return (all(second.contains(g) for g in first.generators)
            and all(first.contains(g) for g in second.generators))


def _univariate(coeffs: List[Any]) -> PolyElement:
    x = XY.gen('x')
    degree = len(coeffs) - 1
    poly = XY.zero()
    for i, c in enumerate(coeffs):
        if c:
            poly += XY.const(c) * x ** (degree - i)
    return poly


def family_ideal(point: SlicePoint) -> Optional[Ideal]:
    """Generators as displayed per family; None where no closed display applies.

    Cyclic slice points give <chi(x), -y + Q(x)>. The D zero fiber gives
    <x^(2n-1), xy - sum mu_2k x^2k, y^2 - sum nu_2k x^2k> with
    nu_(2n-2) = c sigma^2 + sum mu_2i mu_(2n-2i), where S^2 = c f^(2n-2).
    """
    T = point.type
    x, y = XY.gen('x'), XY.gen('y')
    m, r = T.m, T.rank
    if T.family == 'D' and not point.tau:
        if not point.is_zero_fiber:
            return None
        constant = to_scalar(dn_relations(T)['S2_constant'])
        mu = list(point.mu[:r - 1])
        M = XY.zero()
        N = XY.zero()
        for k in range(1, r):
            nu = sum((mu[i - 1] * mu[k - i] for i in range(1, k + 1)), QQ_I.zero)
            if k == r - 1:
                nu += constant * point.sigma * point.sigma
            N += XY.const(nu) * x ** (2 * k)
            M += XY.const(mu[k - 1]) * x ** (2 * k)
        return Ideal([x ** (2 * r - 1), x * y - M, y ** 2 - N], n=m)
    chi = _univariate(family_charpoly(T, point.t, point.tau if T.family == 'D' else None))
    Q = XY.zero()
    if T.family == 'A':
        A, B = point.matrices()
        mu1 = B[0][0] - sum((point.mu[k - 2] * mat_pow(A, k - 1)[0][0] for k in range(2, m + 1)), QQ_I.zero)
        Q += XY.const(mu1)
        for k, mk in enumerate(point.mu, start=2):
            Q += XY.const(mk) * x ** (k - 1)
    else:
        for k, mk in enumerate(point.mu, start=1):
            Q += XY.const(mk) * x ** (2 * k - 1)
    return Ideal([chi, -y + Q], n=m)


@dataclass
class IdealicImage:
    type: LieType
    ideal: Ideal
    standard: List[Monomial]
    noncontinuous: bool
    invariant: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.type.name, 'codim': self.ideal.n,
                'generators': self.ideal.to_dict()['generators'],
                'standard_monomials': [list(mono) for mono in self.standard],
                'noncontinuous': self.noncontinuous,
                'minus_id_invariant': self.invariant}


def idealic_map(point: SlicePoint) -> IdealicImage:
    """Ideal of the commuting pair of a slice point.

    D slice points with tau = sigma = 0 are not cyclic; their image is the
    limit of I(A, B + eps S_t) in the [2n-1, 1] chart and carries the
    noncontinuous flag.
    """
    T = point.type
    A, B = point.matrices()
    noncontinuous = T.family == 'D' and not point.tau and not point.sigma
    if noncontinuous:
        logger.info("%s point with tau = sigma = 0: taking the chart limit", T.name)
        ideal, standard = annihilator(A, B, limit_direction=point.s_t())
    else:
        ideal, standard = annihilator(A, B)
    if ideal.n != T.m:
        raise NonGenericConfigurationError(f"idealic image has codimension {ideal.n}, expected {T.m}",
                                           {'point': point.to_dict()})
    invariant = minus_id_invariant(ideal) if T.family != 'A' else None
    if invariant is False:
        logger.warning("Idealic image of %s is not invariant under -id", point.to_dict())
    return IdealicImage(T, ideal, standard, noncontinuous, invariant)

