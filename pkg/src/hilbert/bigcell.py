"""Big-cell points (t_1..t_n, mu_1..mu_n) and their ideals."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import sympy

from algebra import Registry, scalar_to_json, to_scalar, to_sympy
from core.errors import UsageError
from .ideal import Ideal
from .pairs import CommutingPair

logger = logging.getLogger(__name__)


def t_symbols(n: int) -> List[sympy.Symbol]:
    return [sympy.Symbol(f't{k}') for k in range(1, n + 1)]


def mu_symbols(n: int) -> List[sympy.Symbol]:
    return [sympy.Symbol(f'mu{k}') for k in range(1, n + 1)]


def reduced_mu1(n: int, t: Sequence[Any], mu: Sequence[Any]) -> Any:
    """mu_1 = -sum_{k=2}^{n-1} (k/n) t_k mu_{k+1}; t and mu are indexed from 1."""
    total = 0
    for k in range(2, n):
        total = total + sympy.Rational(k, n) * t[k - 1] * mu[k]
    return -total


@dataclass
class BigCellPoint:
    """Coordinates of <x^n - sum t_k x^(n-k), -y + sum mu_k x^(k-1)>.

    Values are sympy expressions (symbolic or exact numbers). In reduced
    mode t_1 = 0 and mu_1 is derived, never stored independently.
    """
    n: int
    t: List[Any]
    mu: List[Any]
    reduced: bool = False

    def __post_init__(self):
        if len(self.t) != self.n or len(self.mu) != self.n:
            raise UsageError(f"big-cell point of order {self.n} needs {self.n} t and {self.n} mu values")
        self.t = [sympy.sympify(v) for v in self.t]
        self.mu = [sympy.sympify(v) for v in self.mu]
        if self.reduced:
            self.t[0] = sympy.Integer(0)
            self.mu[0] = sympy.expand(reduced_mu1(self.n, self.t, self.mu))

    @classmethod
    def symbolic(cls, n: int, reduced: bool = False) -> 'BigCellPoint':
        return cls(n, t_symbols(n), mu_symbols(n), reduced)

    @property
    def free_symbols(self) -> List[sympy.Symbol]:
        names = set()
        for v in self.t + self.mu:
            names |= v.free_symbols
        return sorted(names, key=lambda s: s.name)

    def registry(self) -> Registry:
        return Registry(['x', 'y'] + [s.name for s in self.free_symbols])

    def ideal(self) -> Ideal:
        reg = self.registry()
        x, y = reg.gen('x'), reg.gen('y')
        F = x ** self.n
        for k, tk in enumerate(self.t, start=1):
            F = F - reg.from_expr(tk) * x ** (self.n - k)
        Q = reg.zero()
        for k, mk in enumerate(self.mu, start=1):
            Q = Q + reg.from_expr(mk) * x ** (k - 1)
        return Ideal([F, -y + Q], self.n)

    def companion(self) -> sympy.Matrix:
        """M_x on the basis (1, x, ..., x^(n-1)); column k is x * x^k."""
        n = self.n
        M = sympy.zeros(n, n)
        for i in range(1, n):
            M[i, i - 1] = 1
        for i in range(n):
            M[i, n - 1] = self.t[n - 1 - i]
        return M

    def matrices(self) -> Tuple[sympy.Matrix, sympy.Matrix]:
        """(M_x, M_y) with M_y = mu_1 id + mu_2 M_x + ... + mu_n M_x^(n-1)."""
        Mx = self.companion()
        My = sympy.zeros(self.n, self.n)
        power = sympy.eye(self.n)
        for mk in self.mu:
            My = My + mk * power
            power = Mx * power
        return Mx, My.applyfunc(sympy.expand)

    def pair(self) -> CommutingPair:
        reg = self.registry()
        Mx, My = self.matrices()
        conv = lambda M: [[reg.from_expr(M[i, j]) for j in range(self.n)] for i in range(self.n)]
        return CommutingPair(conv(Mx), conv(My))

    def substitute(self, values: Dict[sympy.Symbol, Any]) -> 'BigCellPoint':
        return BigCellPoint(self.n, [v.subs(values) for v in self.t], [v.subs(values) for v in self.mu],
                            self.reduced)

    def numeric(self) -> Dict[str, List[complex]]:
        return {'t': [complex(v) for v in self.t], 'mu': [complex(v) for v in self.mu]}

    def to_dict(self) -> Dict[str, Any]:
        enc = lambda v: scalar_to_json(v) if not v.free_symbols else str(v)
        return {'n': self.n, 't': [enc(v) for v in self.t], 'mu': [enc(v) for v in self.mu],
                'reduced': self.reduced}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'BigCellPoint':
        try:
            n = int(data['n'])
            dec = lambda v: sympy.sympify(v) if isinstance(v, str) else to_scalar(v)
            t = [_as_expr(dec(v)) for v in data['t']]
            mu = [_as_expr(dec(v)) for v in data['mu']]
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed big-cell point: {e}")
        return cls(n, t, mu, bool(data.get('reduced', False)))


def _as_expr(value):
    if isinstance(value, sympy.Basic):
        return value
    return to_sympy(value)


def reduced_point(n: int, t: Sequence[Any], mu: Sequence[Any]) -> BigCellPoint:
    """Reduced point from t_2..t_n and mu_2..mu_n; t_1 = 0 and mu_1 is derived."""
    if len(t) != n - 1 or len(mu) != n - 1:
        raise UsageError(f"reduced point of order {n} needs {n - 1} t and {n - 1} mu values")
    return BigCellPoint(n, [0] + list(t), [0] + list(mu), reduced=True)
