"""Polynomials localized at a declared set of invertible generators."""
from typing import Dict, FrozenSet, Iterable, Tuple

from sympy.polys.rings import PolyElement

from core.errors import DegenerateStructureError, UsageError
from .polys import poly_to_text


class Localized:
    """numerator / monomial, the monomial built from invertible generators only."""

    __slots__ = ('num', 'den', 'invertible')

    def __init__(self, num: PolyElement, den: Tuple[int, ...] = None, invertible: Iterable[int] = ()):
        ring = num.ring
        self.invertible: FrozenSet[int] = frozenset(invertible)
        den = tuple(den) if den is not None else (0,) * ring.ngens
        if any(e and i not in self.invertible for i, e in enumerate(den)):
            raise UsageError("denominator uses a generator outside the invertible set")
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num: PolyElement, den: Tuple[int, ...]):
        if not num:
            return num, (0,) * len(den)
        den = list(den)
        monoms = num.monoms()
        shift = [0] * len(den)
        for i, e in enumerate(den):
            if e:
                shift[i] = min(e, min(m[i] for m in monoms))
        if any(shift):
            terms = {tuple(a - s for a, s in zip(m, shift)): c for m, c in num.terms()}
            num = num.ring.from_dict(terms)
            den = [e - s for e, s in zip(den, shift)]
        return num, tuple(den)

    @classmethod
    def of(cls, num: PolyElement, invertible: Iterable[int]) -> 'Localized':
        return cls(num, None, invertible)

    def _lift(self, other) -> 'Localized':
        if isinstance(other, Localized):
            return other
        ring = self.num.ring
        value = other if isinstance(other, PolyElement) else ring.ground_new(ring.domain.convert(other))
        return Localized(value, None, self.invertible)

    @staticmethod
    def _monomial(ring, exps: Tuple[int, ...]) -> PolyElement:
        return ring.from_dict({tuple(exps): ring.domain.one})

    def _common(self, other: 'Localized'):
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        ring = self.num.ring
        a = self.num * self._monomial(ring, tuple(d - e for d, e in zip(den, self.den)))
        b = other.num * self._monomial(ring, tuple(d - e for d, e in zip(den, other.den)))
        return a, b, den

    def __add__(self, other) -> 'Localized':
        other = self._lift(other)
        a, b, den = self._common(other)
        return Localized(a + b, den, self.invertible | other.invertible)

    __radd__ = __add__

    def __neg__(self) -> 'Localized':
        return Localized(-self.num, self.den, self.invertible)

    def __sub__(self, other) -> 'Localized':
        return self + (-self._lift(other))

    def __rsub__(self, other) -> 'Localized':
        return self._lift(other) - self

    def __mul__(self, other) -> 'Localized':
        other = self._lift(other)
        den = tuple(a + b for a, b in zip(self.den, other.den))
        return Localized(self.num * other.num, den, self.invertible | other.invertible)

    __rmul__ = __mul__

    def inverse(self) -> 'Localized':
        """Invert a scalar multiple of a monomial in invertible generators."""
        terms = self.num.terms()
        if len(terms) != 1:
            raise DegenerateStructureError(f"cannot invert {self.to_text()} in the localization")
        monom, coeff = terms[0]
        if any(e and i not in self.invertible for i, e in enumerate(monom)):
            raise DegenerateStructureError(f"cannot invert {self.to_text()} in the localization")
        ring = self.num.ring
        num = ring.from_dict({tuple(self.den): ring.domain.one / coeff})
        return Localized(num, monom, self.invertible)

    def __truediv__(self, other) -> 'Localized':
        return self * self._lift(other).inverse()

    def __pow__(self, k: int) -> 'Localized':
        if k < 0:
            return self.inverse() ** (-k)
        result = self._lift(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        a, b, _ = self._common(other)
        return a == b

    def __bool__(self) -> bool:
        return bool(self.num)

    def __hash__(self):
        return hash((self.num, self.den))

    def den_power(self, index: int) -> int:
        return self.den[index]

    def to_text(self) -> str:
        ring = self.num.ring
        if not any(self.den):
            return poly_to_text(self.num)
        den = '*'.join(f"{s}^{e}" if e > 1 else str(s) for s, e in zip(ring.symbols, self.den) if e)
        return f"({poly_to_text(self.num)}) / ({den})"

    def to_dict(self) -> Dict[str, object]:
        ring = self.num.ring
        return {
            'numerator': poly_to_text(self.num),
            'denominator': {str(s): e for s, e in zip(ring.symbols, self.den) if e}
        }

    def __repr__(self) -> str:
        return f"Localized({self.to_text()})"
