"""Codimension-n ideals of C[x, y]: normal forms and the running-columns chart scan."""
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement

from algebra import (Registry, coeffs_in, degree_in, poly_to_text, random_scalar, rank_exact,
                     solve_exact, to_scalar)
from core.config import DEFAULT_SEED
from core.errors import (InternalError, NonGenericConfigurationError, NotFiniteCodimensionError,
                         UsageError)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]

X, Y = 0, 1
REWRITE_GUARD = 100000


def split_xy(poly: PolyElement) -> Dict[Monomial, PolyElement]:
    """Group a polynomial by its (x, y) exponents; coefficients live in the parameters."""
    ring = poly.ring
    parts: Dict[Monomial, Dict[Tuple[int, ...], object]] = {}
    for monom, coeff in poly.terms():
        key = (monom[X], monom[Y])
        rest = (0, 0) + tuple(monom[2:])
        parts.setdefault(key, {})[rest] = coeff
    return {k: ring.from_dict(v) for k, v in parts.items()}


def xy_monomial(ring, i: int, j: int) -> PolyElement:
    exps = [0] * ring.ngens
    exps[X], exps[Y] = i, j
    return ring.from_dict({tuple(exps): ring.domain.one})


class TriangularReducer:
    """Normal form modulo <F(x) monic, -y + Q(x)>: y -> Q(x), then x^n -> x^n - F."""

    def __init__(self, F: PolyElement, Q: PolyElement):
        self.F = F
        self.Q = Q
        self.n = degree_in(F, X)
        self.ring = F.ring

    @classmethod
    def detect(cls, generators: Sequence[PolyElement]) -> Optional['TriangularReducer']:
        if len(generators) != 2:
            return None
        for F, G in (generators, generators[::-1]):
            if not F or degree_in(F, Y) != 0 or degree_in(G, Y) != 1:
                continue
            lead = coeffs_in(F, X)[degree_in(F, X)]
            if lead.monoms() != [(0,) * F.ring.ngens]:
                continue
            parts = coeffs_in(G, Y)
            ycoeff = parts[1]
            if ycoeff.monoms() != [(0,) * G.ring.ngens]:
                continue
            unit = F.ring.domain.one / lead.coeff(1)
            Q = -parts.get(0, G.ring.zero) * (G.ring.domain.one / ycoeff.coeff(1))
            return cls(F * unit, Q)
        return None

    def reduce(self, poly: PolyElement) -> PolyElement:
        if degree_in(poly, Y) > 0:
            poly = poly.compose(self.ring.gens[Y], self.Q)
        x = self.ring.gens[X]
        while poly and degree_in(poly, X) >= self.n:
            d = degree_in(poly, X)
            c = coeffs_in(poly, X)[d]
            poly = poly - c * x ** (d - self.n) * self.F
        return poly

    def standard_monomials(self, bound: int) -> List[Monomial]:
        return [(i, 0) for i in range(self.n)]


class RuleReducer:
    """Normal form for a declared rewrite system x^a y^b -> rule[(a, b)].

    The rules must terminate; a step guard turns a looping system into an
    InternalError.
    """

    def __init__(self, ring, rules: Dict[Monomial, PolyElement]):
        self.ring = ring
        self.rules = dict(rules)
        self.leads = sorted(self.rules)

    def _divisor(self, monom) -> Optional[Monomial]:
        for a, b in self.leads:
            if monom[X] >= a and monom[Y] >= b:
                return (a, b)
        return None

    def reduce(self, poly: PolyElement) -> PolyElement:
        ring = self.ring
        result = ring.zero
        work = poly
        steps = 0
        while work:
            monom, coeff = max(work.terms(), key=lambda mc: (mc[0][X] + mc[0][Y], mc[0]))
            term = ring.from_dict({monom: coeff})
            work = work - term
            lead = self._divisor(monom)
            if lead is None:
                result = result + term
                continue
            rest = list(monom)
            rest[X] -= lead[0]
            rest[Y] -= lead[1]
            work = work + ring.from_dict({tuple(rest): coeff}) * self.rules[lead]
            steps += 1
            if steps > REWRITE_GUARD:
                raise InternalError("rewrite rules did not terminate", {'rules': [list(k) for k in self.leads]})
        return result

    def standard_monomials(self, bound: int) -> List[Monomial]:
        return [(i, j) for j in range(bound + 1) for i in range(bound + 1) if self._divisor((i, j)) is None]


class GroebnerReducer:
    """Normal form for parameter-free ideals through a grevlex Groebner basis (sympy)."""

    def __init__(self, ring, generators: Sequence[PolyElement]):
        self.ring = ring
        x, y = ring.symbols[X], ring.symbols[Y]
        self.gens = (x, y)
        self.basis = sympy.groebner([g.as_expr() for g in generators], x, y, order='grevlex',
                                    domain=QQ_I)
        self.leads = [p.monoms(order='grevlex')[0] for p in self.basis.polys]
        if (0, 0) in self.leads:
            raise UsageError("the generators span the unit ideal")
        logger.debug("Groebner basis with leading monomials %s", self.leads)

    def reduce(self, poly: PolyElement) -> PolyElement:
        if not poly:
            return poly
        _, remainder = self.basis.reduce(poly.as_expr())
        return self.ring.from_expr(sympy.expand(remainder)) if remainder != 0 else self.ring.zero

    def standard_monomials(self, bound: int) -> List[Monomial]:
        return [(i, j) for j in range(bound + 1) for i in range(bound + 1)
                if not any(i >= a and j >= b for a, b in self.leads)]


@dataclass
class Relation:
    monomial: Monomial
    combination: Dict[Monomial, PolyElement] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            'monomial': list(self.monomial),
            'combination': [{'basis': list(k), 'coeff': poly_to_text(v)}
                            for k, v in sorted(self.combination.items())]
        }


@dataclass
class QuotientData:
    basis: List[Monomial]
    relations: List[Relation]

    @property
    def codim(self) -> int:
        return len(self.basis)

    def to_dict(self) -> Dict[str, object]:
        return {
            'basis': [list(b) for b in self.basis],
            'codim': self.codim,
            'relations': [r.to_dict() for r in self.relations]
        }


class Ideal:
    """Ideal of the ring with generators x, y followed by symbolic parameters."""

    def __init__(self, generators: Sequence[PolyElement], n: Optional[int] = None,
                 rules: Optional[Dict[Monomial, PolyElement]] = None):
        generators = [g for g in generators if g]
        if not generators:
            raise UsageError("an ideal needs at least one nonzero generator")
        self.ring = generators[0].ring
        names = [str(s) for s in self.ring.symbols]
        if names[:2] != ['x', 'y']:
            raise UsageError(f"ideal ring must start with x, y; got {names}")
        self.generators = list(generators)
        self.n = n
        self.rules = rules
        self._reducer = None
        self._quotient: Optional[QuotientData] = None

    @property
    def params(self) -> List[str]:
        return [str(s) for s in self.ring.symbols[2:]]

    @property
    def reducer(self):
        if self._reducer is None:
            if self.rules is not None:
                self._reducer = RuleReducer(self.ring, self.rules)
            else:
                self._reducer = TriangularReducer.detect(self.generators)
            if self._reducer is None:
                if self.params:
                    raise UsageError("symbolic non-triangular ideals need declared rewrite rules")
                self._reducer = GroebnerReducer(self.ring, self.generators)
        return self._reducer

    def normal_form(self, poly: PolyElement) -> PolyElement:
        return self.reducer.reduce(poly)

    def contains(self, poly: PolyElement) -> bool:
        return not self.normal_form(poly)

    def monomial(self, i: int, j: int) -> PolyElement:
        return xy_monomial(self.ring, i, j)

    def coefficients(self, poly: PolyElement) -> Dict[Monomial, PolyElement]:
        return split_xy(self.normal_form(poly))

    def _standard(self, bound: int) -> List[Monomial]:
        return self.reducer.standard_monomials(bound)

    def vector(self, i: int, j: int, standard: List[Monomial], point=None) -> List[object]:
        """Coordinates of x^i y^j modulo I on the reducer's standard monomials."""
        parts = self.coefficients(self.monomial(i, j))
        stray = set(parts) - set(standard)
        if stray:
            raise NotFiniteCodimensionError(f"normal form leaves the scanned grid at {sorted(stray)}")
        values = []
        for mono in standard:
            c = parts.get(mono, self.ring.zero)
            values.append(self._at(c, point))
        return values

    def _at(self, c: PolyElement, point):
        if not c:
            return to_scalar(0)
        if not self.params:
            return c.coeff(1)
        if point is None:
            return c
        value = c.evaluate(list(zip(self.ring.gens[2:], point)))
        return value.coeff(1) if isinstance(value, PolyElement) else value

    def to_dict(self) -> Dict[str, object]:
        return {'generators': [poly_to_text(g) for g in self.generators], 'codim': self.n}

    def __repr__(self) -> str:
        return f"Ideal<{', '.join(poly_to_text(g) for g in self.generators)}>"


def _sample_points(ideal: Ideal, count: int = 2) -> List[Optional[list]]:
    if not ideal.params:
        return [None]
    rng = random.Random(DEFAULT_SEED)
    return [[random_scalar(rng, height=101) for _ in ideal.params] for _ in range(count)]


def quotient_basis(ideal: Ideal, bound: Optional[int] = None) -> QuotientData:
    """Scan [0, bound] x [0, bound] by columns and keep independent monomials.

    Within a column (fixed y-power) monomials are visited by increasing
    x-power; the first dependent monomial yields a relation and the scan
    jumps to the next column.
    """
    if ideal._quotient is not None and bound is None:
        return ideal._quotient
    if bound is None:
        bound = (ideal.n + 1) if ideal.n else 8
    standard = ideal._standard(bound)
    points = _sample_points(ideal)
    logger.debug("Scanning %s up to degree %d", ideal, bound)

    selected: List[Monomial] = []
    rows: Dict[object, List[list]] = {id(p): [] for p in points}
    rejected: List[Monomial] = []
    for j in range(bound + 1):
        for i in range(bound + 1):
            independent = False
            for p in points:
                candidate = rows[id(p)] + [ideal.vector(i, j, standard, p)]
                if rank_exact(candidate) == len(candidate):
                    independent = True
                    break
            if not independent:
                rejected.append((i, j))
                break
            if i == bound or j == bound:
                raise NotFiniteCodimensionError(
                    f"monomial x^{i}*y^{j} still independent at the grid bound {bound}",
                    {'bound': bound, 'basis_size': len(selected) + 1})
            selected.append((i, j))
            for p in points:
                rows[id(p)].append(ideal.vector(i, j, standard, p))

    if ideal.n is not None and len(selected) != ideal.n:
        raise UsageError(f"quotient has dimension {len(selected)}, declared length is {ideal.n}",
                         {'basis': [list(b) for b in selected]})

    relations = [Relation(m, express(ideal, m, selected)) for m in rejected]
    data = QuotientData(selected, relations)
    ideal._quotient = data
    if ideal.n is None:
        ideal.n = data.codim
    logger.debug("Quotient basis %s (codim %d)", selected, data.codim)
    return data


def express(ideal: Ideal, monomial: Monomial, basis: List[Monomial]) -> Dict[Monomial, PolyElement]:
    """Write x^i y^j modulo I as a combination of the given basis monomials."""
    parts = ideal.coefficients(ideal.monomial(*monomial))
    if set(parts) <= set(basis):
        return {k: v for k, v in parts.items() if v}
    if ideal.params:
        raise UsageError("basis change with symbolic parameters is only available through haiman_coords")
    bound = max(max(a, b) for a, b in basis + [monomial]) + 1
    standard = ideal._standard(bound)
    columns = [ideal.vector(a, b, standard, None) for a, b in basis]
    matrix = [[col[r] for col in columns] for r in range(len(standard))]
    target = ideal.vector(monomial[0], monomial[1], standard, None)
    solution = solve_exact(matrix, target)
    if solution is None:
        raise InternalError(f"monomial {monomial} is not in the span of the basis")
    return {b: ideal.ring.ground_new(c) for b, c in zip(basis, solution) if c}


def from_points(points: Sequence[Tuple[object, object]], registry: Optional[Registry] = None) -> Ideal:
    """Ideal of n points in generic position: <prod(x - x_i), -y + Q(x)>, Q interpolating."""
    if not points:
        raise UsageError("from_points needs at least one point")
    registry = registry or Registry(['x', 'y'])
    xs = [to_scalar(p[0]) for p in points]
    ys = [to_scalar(p[1]) for p in points]
    if len(set(xs)) != len(xs):
        raise NonGenericConfigurationError("points share an x-coordinate",
                                           {'x': [str(v) for v in xs]})
    x, y = registry.gen('x'), registry.gen('y')
    F = registry.one()
    for xi in xs:
        F = F * (x - xi)
    Q = registry.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = registry.const(yi)
        for k, xk in enumerate(xs):
            if k != i:
                basis = basis * (x - xk) * (registry.ring.domain.one / (xi - xk))
        Q = Q + basis
    return Ideal([F, -y + Q], len(points))


def ideal_from_dict(data: Dict[str, object]) -> Ideal:
    """Ideal JSON: {generators: [poly-text], codim: n}."""
    texts = data.get('generators')
    if not isinstance(texts, list) or not texts:
        raise UsageError("ideal JSON needs a non-empty 'generators' list")
    try:
        exprs = [sympy.sympify(str(t).replace('^', '**')) for t in texts]
    except sympy.SympifyError as e:
        raise UsageError(f"cannot parse ideal generators: {e}")
    names = sorted({s.name for e in exprs for s in e.free_symbols} - {'x', 'y'})
    registry = Registry(['x', 'y'] + names)
    codim = data.get('codim')
    return Ideal([registry.from_expr(e) for e in exprs], int(codim) if codim is not None else None)
