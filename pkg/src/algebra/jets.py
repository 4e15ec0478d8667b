"""First-order jets: arithmetic modulo the square of designated nilpotent generators."""
import cmath
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from core.errors import NumericFailure, UsageError
from .linalg import det_fraction_free


class Jet1:
    """body + sum_g soul[g] * g with g*g' = 0 for all nilpotent generators g, g'.

    Bodies and soul coefficients may be polynomials or complex numbers; the
    class only needs ring operations (and division for numeric inverses).
    """

    __slots__ = ('body', 'soul')

    def __init__(self, body: Any, soul: Optional[Dict[str, Any]] = None):
        self.body = body
        self.soul = {k: v for k, v in (soul or {}).items() if v}

    @staticmethod
    def lift(value: Any) -> 'Jet1':
        return value if isinstance(value, Jet1) else Jet1(value)

    @classmethod
    def generator(cls, name: str, one: Any = 1, zero: Any = 0) -> 'Jet1':
        return cls(zero, {name: one})

    def part(self, name: str) -> Any:
        return self.soul.get(name, self.body * 0)

    def keys(self) -> List[str]:
        return sorted(self.soul)

    def __add__(self, other: Any) -> 'Jet1':
        other = Jet1.lift(other)
        soul = dict(self.soul)
        for k, v in other.soul.items():
            soul[k] = soul[k] + v if k in soul else v
        return Jet1(self.body + other.body, soul)

    __radd__ = __add__

    def __neg__(self) -> 'Jet1':
        return Jet1(-self.body, {k: -v for k, v in self.soul.items()})

    def __sub__(self, other: Any) -> 'Jet1':
        return self + (-Jet1.lift(other))

    def __rsub__(self, other: Any) -> 'Jet1':
        return Jet1.lift(other) - self

    def __mul__(self, other: Any) -> 'Jet1':
        if not isinstance(other, Jet1):
            return Jet1(self.body * other, {k: v * other for k, v in self.soul.items()})
        soul = {k: v * other.body for k, v in self.soul.items()}
        for k, v in other.soul.items():
            term = self.body * v
            soul[k] = soul[k] + term if k in soul else term
        return Jet1(self.body * other.body, soul)

    def __rmul__(self, other: Any) -> 'Jet1':
        return Jet1(other * self.body, {k: other * v for k, v in self.soul.items()})

    def inverse(self) -> 'Jet1':
        if not self.body:
            raise NumericFailure("jet with vanishing body is not invertible")
        inv = 1 / self.body
        return Jet1(inv, {k: -v * inv * inv for k, v in self.soul.items()})

    def __truediv__(self, other: Any) -> 'Jet1':
        if isinstance(other, Jet1):
            return self * other.inverse()
        return Jet1(self.body / other, {k: v / other for k, v in self.soul.items()})

    def __rtruediv__(self, other: Any) -> 'Jet1':
        return Jet1.lift(other) * self.inverse()

    def __pow__(self, k: int) -> 'Jet1':
        if k < 0:
            return self.inverse() ** (-k)
        result = Jet1(self.body ** 0)
        base = self
        for _ in range(k):
            result = result * base
        return result

    def conjugate(self, key_map: Optional[Callable[[str], str]] = None) -> 'Jet1':
        key_map = key_map or (lambda k: k)
        return Jet1(self.body.conjugate(), {key_map(k): v.conjugate() for k, v in self.soul.items()})

    def nth_root(self, n: int, root: Optional[Callable[[complex, int], complex]] = None) -> 'Jet1':
        """Numeric n-th root; the body root defaults to the principal branch."""
        root = root or principal_root
        r = root(complex(self.body), n)
        if r == 0:
            raise NumericFailure("n-th root of a jet with vanishing body")
        return Jet1(r, {k: v / (n * r ** (n - 1)) for k, v in self.soul.items()})

    def map(self, fn: Callable[[Any], Any]) -> 'Jet1':
        return Jet1(fn(self.body), {k: fn(v) for k, v in self.soul.items()})

    def __bool__(self) -> bool:
        return bool(self.body) or bool(self.soul)

    def __eq__(self, other: Any) -> bool:
        other = Jet1.lift(other)
        diff = self - other
        return not diff

    def __hash__(self):
        return hash((repr(self.body), tuple(sorted((k, repr(v)) for k, v in self.soul.items()))))

    def __repr__(self) -> str:
        souls = ' + '.join(f"({v})*{k}" for k, v in sorted(self.soul.items()))
        return f"Jet1({self.body}{' + ' + souls if souls else ''})"

    def max_abs(self) -> float:
        """Largest absolute value over body and soul coefficients (numeric jets)."""
        values = [abs(complex(self.body))] + [abs(complex(v)) for v in self.soul.values()]
        return max(values)


def principal_root(z: complex, n: int) -> complex:
    """n-th root with argument in (-pi/n, pi/n]."""
    if z == 0:
        return 0j
    r, phi = cmath.polar(z)
    if phi <= -cmath.pi:
        phi += 2 * cmath.pi
    return cmath.rect(r ** (1.0 / n), phi / n)


def det_jet1(M: Sequence[Sequence[Jet1]], one: Any = None) -> Jet1:
    """Determinant modulo second order: det(body) + tr(adj(body) * soul)."""
    n = len(M)
    body = [[Jet1.lift(v).body for v in row] for row in M]
    det_body = det_fraction_free(body, one)
    soul: Dict[str, Any] = {}
    for i in range(n):
        for j in range(n):
            entry = Jet1.lift(M[i][j])
            if not entry.soul:
                continue
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(body) if r != i]
            cof = det_fraction_free(minor, one)
            if (i + j) % 2:
                cof = -cof
            for k, v in entry.soul.items():
                term = v * cof
                soul[k] = soul[k] + term if k in soul else term
    return Jet1(det_body, soul)


def det_jet_numeric(M: Sequence[Sequence[Any]]) -> Jet1:
    """Determinant of a matrix of numeric jets by partial pivoting on the body."""
    A = [[Jet1.lift(v) if isinstance(v, Jet1) else Jet1(complex(v)) for v in row] for row in M]
    n = len(A)
    det = Jet1(1 + 0j)
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(complex(A[i][k].body)))
        if abs(complex(A[p][k].body)) == 0:
            raise NumericFailure("numeric jet determinant hit a singular body pivot", 0.0, {'step': k})
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        pivot = A[k][k]
        det = det * pivot
        inv = pivot.inverse()
        for i in range(k + 1, n):
            factor = A[i][k] * inv
            for j in range(k + 1, n):
                A[i][j] = A[i][j] - factor * A[k][j]
    return det


def jets_max_deviation(a: Iterable[Jet1], b: Iterable[Jet1]) -> Dict[str, float]:
    body = 0.0
    soul = 0.0
    for x, y in zip(a, b):
        d = Jet1.lift(x) - Jet1.lift(y)
        body = max(body, abs(complex(d.body)))
        for v in d.soul.values():
            soul = max(soul, abs(complex(v)))
    return {'body': body, 'soul': soul}
