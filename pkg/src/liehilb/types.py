"""Classical Lie algebras in fixed matrix representations.

A_r acts on C^(r+1) (traceless), B_r and D_r preserve the anti-diagonal
metric g(e_i, e_j) = delta(i, m-1-j), C_r preserves
omega = sum e_i ^ e_(r+i). All matrices are nested lists of exact
Gaussian rationals.
"""
import logging
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I

from algebra import (commutator, identity, is_zero_matrix, mat_mul, scalar_to_json, solve_exact,
                     to_scalar, zeros)
from core.errors import ConstraintError, InternalError, UsageError

logger = logging.getLogger(__name__)

Matrix = List[List[Any]]

FAMILIES = ('A', 'B', 'C', 'D')


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown Lie family {self.family!r}; expected one of {FAMILIES}")
        if self.rank < 1:
            raise UsageError(f"rank must be positive, got {self.rank}")
        if self.family == 'D' and self.rank < 3:
            raise UsageError(f"D_{self.rank} is not simple; D needs rank >= 3")

    @classmethod
    def parse(cls, text: str) -> 'LieType':
        match = re.fullmatch(r'\s*([ABCDabcd])_?(\d+)\s*', text)
        if not match:
            raise UsageError(f"cannot parse Lie type {text!r}; use e.g. A2, B3, C2, D4")
        return cls(match.group(1).upper(), int(match.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def m(self) -> int:
        r = self.rank
        return {'A': r + 1, 'B': 2 * r + 1, 'C': 2 * r, 'D': 2 * r}[self.family]

    @property
    def dim(self) -> int:
        r = self.rank
        return {'A': r * (r + 2), 'B': r * (2 * r + 1), 'C': r * (2 * r + 1), 'D': r * (2 * r - 1)}[self.family]

    def slice_names(self) -> List[str]:
        r = self.rank
        if self.family == 'A':
            return [f't{k}' for k in range(2, r + 2)]
        if self.family == 'D':
            return [f't{2 * k}' for k in range(1, r)] + [f'tau{r}']
        return [f't{2 * k}' for k in range(1, r + 1)]

    def centralizer_names(self) -> List[str]:
        r = self.rank
        if self.family == 'A':
            return [f'mu{k}' for k in range(2, r + 2)]
        if self.family == 'D':
            return [f'mu{2 * k}' for k in range(1, r)] + [f'sigma{r}']
        return [f'mu{2 * k}' for k in range(1, r + 1)]

    def __str__(self) -> str:
        return self.name


def unit(m: int, i: int, j: int, value: Any = 1) -> Matrix:
    M = zeros(m)
    M[i][j] = to_scalar(value)
    return M


def mat_add(*matrices: Matrix) -> Matrix:
    result = [list(row) for row in matrices[0]]
    for M in matrices[1:]:
        result = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(result, M)]
    return result


def mat_scale(c: Any, M: Matrix) -> Matrix:
    c = to_scalar(c)
    return [[c * v for v in row] for row in M]


def mat_pow(M: Matrix, k: int) -> Matrix:
    result = identity(len(M))
    for _ in range(k):
        result = mat_mul(result, M)
    return result


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def matrix_to_json(M: Matrix) -> List[List[Dict[str, str]]]:
    return [[scalar_to_json(v) for v in row] for row in M]


def matrix_from_json(rows: Sequence[Sequence[Any]]) -> Matrix:
    M = [[to_scalar(v) for v in row] for row in rows]
    if any(len(row) != len(M) for row in M):
        raise UsageError("matrix must be square")
    return M


def metric(T: LieType) -> Matrix:
    """Gram matrix of the invariant form (B, C, D)."""
    m, r = T.m, T.rank
    J = zeros(m)
    if T.family in ('B', 'D'):
        for i in range(m):
            J[i][m - 1 - i] = QQ_I.one
    elif T.family == 'C':
        for i in range(r):
            J[i][r + i] = QQ_I.one
            J[r + i][i] = -QQ_I.one
    else:
        raise UsageError("type A carries no invariant bilinear form")
    return J


def adjoint_dual(T: LieType, X: Matrix) -> Matrix:
    """J^-1 X^T J; X lies in the algebra iff this equals -X."""
    J = metric(T)
    Jinv = J if T.family in ('B', 'D') else mat_scale(-1, J)
    return mat_mul(mat_mul(Jinv, transpose(X)), J)


def project(T: LieType, X: Matrix) -> Matrix:
    """Idempotent projection onto the algebra."""
    m = T.m
    if T.family == 'A':
        trace = sum((X[i][i] for i in range(m)), QQ_I.zero)
        shift = trace / QQ_I(m, 0)
        return [[X[i][j] - (shift if i == j else QQ_I.zero) for j in range(m)] for i in range(m)]
    dual = adjoint_dual(T, X)
    half = QQ_I(1, 0) / QQ_I(2, 0)
    return [[(a - b) * half for a, b in zip(ra, rb)] for ra, rb in zip(X, dual)]


def contains(T: LieType, X: Matrix) -> bool:
    return is_zero_matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(X, project(T, X))])


def require_in_algebra(T: LieType, X: Matrix, label: str = 'matrix'):
    if len(X) != T.m:
        raise ConstraintError(f"{label} has size {len(X)}, {T.name} acts on dimension {T.m}")
    if not contains(T, X):
        raise ConstraintError(f"{label} does not lie in {T.name}")


@lru_cache(maxsize=None)
def _basis(family: str, rank: int) -> Tuple[Tuple[Tuple[Any, ...], ...], ...]:
    T = LieType(family, rank)
    m = T.m
    seen = {}
    candidates = []
    if family == 'A':
        for i in range(m):
            for j in range(m):
                if i != j:
                    candidates.append(unit(m, i, j))
        for i in range(m - 1):
            candidates.append(mat_add(unit(m, i, i), unit(m, i + 1, i + 1, -1)))
    else:
        candidates = [project(T, unit(m, i, j)) for i in range(m) for j in range(m)]
    for X in candidates:
        flat = [v for row in X for v in row]
        lead = next((v for v in flat if v), None)
        if lead is None:
            continue
        key = tuple(v / lead for v in flat)
        seen.setdefault(key, None)
    if len(seen) != T.dim:
        raise InternalError(f"basis of {T.name} has {len(seen)} elements, expected {T.dim}")
    return tuple(tuple(tuple(key[i * m:(i + 1) * m]) for i in range(m)) for key in seen)


def algebra_basis(T: LieType) -> List[Matrix]:
    return [[list(row) for row in X] for X in _basis(T.family, T.rank)]


def principal_nilpotent(T: LieType) -> Matrix:
    """The fixed principal nilpotent f: a sum of simple negative root vectors."""
    m, r = T.m, T.rank
    f = zeros(m)
    one = QQ_I.one
    if T.family == 'A':
        for i in range(m - 1):
            f[i + 1][i] = one
    elif T.family == 'B':
        for i in range(m - 1):
            f[i + 1][i] = one if i < r else -one
    elif T.family == 'C':
        for i in range(r - 1):
            f[i + 1][i] = one
            f[r + i][r + i + 1] = -one
        f[2 * r - 1][r - 1] = one
    else:
        for i in range(r - 1):
            f[i + 1][i] = one
        f[r][r - 2] = one
        f[r + 1][r - 1] = -one
        f[r + 1][r] = -one
        for i in range(r + 1, 2 * r - 1):
            f[i + 1][i] = -one
    return f


def simple_root_positions(T: LieType) -> List[Tuple[int, int]]:
    f = principal_nilpotent(T)
    return [(i, j) for i in range(T.m) for j in range(T.m) if f[i][j]]


def dn_S(T: LieType) -> Matrix:
    """S = E(n-1, 0) - E(n, 0) + E(2n-1, n-1) - E(2n-1, n), zero-based."""
    if T.family != 'D':
        raise UsageError(f"S is defined for type D only, got {T.name}")
    m, r = T.m, T.rank
    return mat_add(unit(m, r - 1, 0), unit(m, r, 0, -1), unit(m, 2 * r - 1, r - 1),
                   unit(m, 2 * r - 1, r, -1))


def grading(T: LieType) -> Matrix:
    """Diagonal h with [h, f] = -2f inside the algebra."""
    f = principal_nilpotent(T)
    m = T.m
    weights: Dict[int, Any] = {0: QQ_I.zero}
    edges = [(i, j) for i in range(m) for j in range(m) if f[i][j]]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i, j in edges:
            # (h_i - h_j) f_ij = -2 f_ij
            if j == v and i not in weights:
                weights[i] = weights[v] - 2
                queue.append(i)
            elif i == v and j not in weights:
                weights[j] = weights[v] + 2
                queue.append(j)
    if len(weights) != m:
        raise InternalError(f"grading of {T.name} is not connected")
    if T.family == 'A':
        shift = sum(weights.values(), QQ_I.zero) / QQ_I(m, 0)
    else:
        partner = m - 1 if T.family in ('B', 'D') else T.rank
        shift = (weights[0] + weights[partner]) / QQ_I(2, 0)
    h = zeros(m)
    for i, w in weights.items():
        h[i][i] = to_scalar(w) - shift
    if not contains(T, h):
        raise InternalError(f"grading element of {T.name} left the algebra")
    return h


def sl2_triple(T: LieType) -> Tuple[Matrix, Matrix, Matrix]:
    """Principal (e, f, h) with [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    f = principal_nilpotent(T)
    h = grading(T)
    basis = algebra_basis(T)
    columns = []
    for G in basis:
        ef = commutator(G, f)
        he = [[a - 2 * b for a, b in zip(ra, rb)] for ra, rb in zip(commutator(h, G), G)]
        columns.append([v for row in ef for v in row] + [v for row in he for v in row])
    system = transpose(columns)
    target = [v for row in h for v in row] + [QQ_I.zero] * (T.m ** 2)
    coeffs = solve_exact(system, target)
    if coeffs is None:
        raise InternalError(f"no principal sl2 triple through f in {T.name}")
    e = zeros(T.m)
    for c, G in zip(coeffs, basis):
        if c:
            e = mat_add(e, mat_scale(c, G))
    return e, f, h


def _params(values: Sequence[Any], count: int, label: str) -> List[Any]:
    values = [to_scalar(v) for v in values]
    if len(values) != count:
        raise ConstraintError(f"{label} needs {count} parameters, got {len(values)}")
    return values


def slice_matrix(T: LieType, t: Sequence[Any], tau: Optional[Any] = None) -> Matrix:
    """Principal slice point; t holds the family's slice coordinates without tau."""
    m, r = T.m, T.rank
    A = principal_nilpotent(T)
    if T.family == 'A':
        t = _params(t, r, 'A slice')
        for k, tk in enumerate(t, start=2):
            A[m - k][m - 1] -= tk
    elif T.family == 'B':
        t = _params(t, r, 'B slice')
        for k, tk in enumerate(t, start=1):
            A[r - k][r + k - 1] += tk
            A[r - k + 1][r + k] -= tk
    elif T.family == 'C':
        t = _params(t, r, 'C slice')
        for k, tk in enumerate(t, start=1):
            A[r - k][2 * r - k] += tk
    else:
        t = _params(t, r - 1, 'D slice')
        t2 = t[0]
        A[r - 2][r - 1] += t2
        A[r - 2][r] += t2
        A[r - 1][r + 1] -= t2
        A[r][r + 1] -= t2
        for k in range(2, r):
            A[r - 1 - k][r + k - 1] += t[k - 1]
            A[r - k][r + k] -= t[k - 1]
        tau = to_scalar(tau if tau is not None else 0)
        A = mat_add(A, mat_scale(tau, transpose(dn_S(T))))
    if not contains(T, A):
        raise ConstraintError(f"slice parameters produce a matrix outside {T.name}")
    return A


def family_charpoly(T: LieType, t: Sequence[Any], tau: Optional[Any] = None) -> List[Any]:
    """Monic characteristic polynomial of the slice point, highest degree first.

    A: x^m + t_2 x^(m-2) + ... + t_m
    B: x^(2r+1) + sum (-1)^k 2 t_2k x^(2r+1-2k)
    C: x^(2r) + sum (-1)^k t_2k x^(2r-2k)
    D: x^(2r) + sum_(k<r) (-1)^k 4 t_2k x^(2r-2k) + (-1)^r 4 tau^2
    """
    m, r = T.m, T.rank
    coeffs = [QQ_I.zero] * (m + 1)
    coeffs[0] = QQ_I.one
    t = [to_scalar(v) for v in t]
    if T.family == 'A':
        for k, tk in enumerate(t, start=2):
            coeffs[k] = tk
        return coeffs
    factor = {'B': 2, 'C': 1, 'D': 4}[T.family]
    for k, tk in enumerate(t, start=1):
        coeffs[2 * k] = QQ_I((-1) ** k * factor, 0) * tk
    if T.family == 'D':
        # this slice basis gives 4 t_2k and (-1)^r 4 tau^2; the coordinates 4 t_2k and 2 tau
        # recover the (-1)^n tau_n^2 normalization
        tau = to_scalar(tau if tau is not None else 0)
        coeffs[m] = QQ_I((-1) ** r * 4, 0) * tau * tau
    return coeffs
