"""GL_2(R) in light-cone form: matrices ((a, conj b), (b, conj a))."""
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from core.errors import ConstraintError, UsageError


@dataclass(frozen=True)
class GL2Elem:
    a: complex
    b: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, 'a', complex(self.a))
        object.__setattr__(self, 'b', complex(self.b))
        if abs(self.det) == 0:
            raise ConstraintError("light-cone element with |a|^2 - |b|^2 = 0 is not invertible",
                                  {'a': repr(self.a), 'b': repr(self.b)})

    @property
    def det(self) -> float:
        return abs(self.a) ** 2 - abs(self.b) ** 2

    @classmethod
    def identity(cls) -> 'GL2Elem':
        return cls(1 + 0j, 0j)

    @classmethod
    def from_real(cls, A: float, B: float, C: float, D: float) -> 'GL2Elem':
        """2a = A + D - i(B - C), 2b = A - D + i(B + C)."""
        return cls(complex(A + D, -(B - C)) / 2, complex(A - D, B + C) / 2)

    @classmethod
    def scaling(cls, lam: float) -> 'GL2Elem':
        return cls(complex(lam), 0j)

    def to_real(self) -> Tuple[float, float, float, float]:
        a, b = self.a, self.b
        return (a.real + b.real, b.imag - a.imag, a.imag + b.imag, a.real - b.real)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b.conjugate()], [self.b, self.a.conjugate()]])

    def __mul__(self, other: 'GL2Elem') -> 'GL2Elem':
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return GL2Elem(a1 * a2 + b1.conjugate() * b2, b1 * a2 + a1.conjugate() * b2)

    def inverse(self) -> 'GL2Elem':
        d = self.det
        return GL2Elem(self.a.conjugate() / d, -self.b / d)

    def to_dict(self) -> Dict[str, object]:
        return {'a': {'re': self.a.real, 'im': self.a.imag}, 'b': {'re': self.b.real, 'im': self.b.imag},
                'real': list(self.to_real())}

    @classmethod
    def from_dict(cls, data) -> 'GL2Elem':
        if isinstance(data, Sequence) and not isinstance(data, (str, dict)):
            if len(data) != 4:
                raise UsageError("a GL2 element needs four reals A B C D")
            return cls.from_real(*[float(v) for v in data])
        try:
            if 'real' in data:
                return cls.from_dict(data['real'])
            a, b = data['a'], data.get('b', {'re': 0, 'im': 0})
            return cls(complex(a['re'], a['im']), complex(b['re'], b['im']))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed GL2 element: {e}")
