"""Exact linear algebra: fraction-free determinants, Sylvester resultants, kernels."""
import logging
from typing import Any, List, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement

from core.errors import UndefinedInputError, UsageError
from .polys import coeff_list, degree_in
from .scalars import to_scalar

logger = logging.getLogger(__name__)

Matrix = List[List[Any]]


def _exquo(num, den):
    if isinstance(num, PolyElement):
        return num.exquo(den)
    if isinstance(num, int) and isinstance(den, int):
        return num // den
    return num / den


def det_fraction_free(M: Sequence[Sequence[Any]], one: Any = None) -> Any:
    """Bareiss elimination; every division is exact over the entry ring."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise UsageError(f"determinant needs a square matrix, got {n}x{len(M[0]) if M else 0}")
    if n == 0:
        return 1 if one is None else one
    A = [list(row) for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return A[k][k] * 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * pivot - A[i][k] * A[k][j]
                A[i][j] = num if prev is None else _exquo(num, prev)
            A[i][k] = A[i][k] * 0
        prev = pivot
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: Sequence[Any], g: Sequence[Any], zero: Any) -> Matrix:
    """Sylvester matrix of coefficient lists given highest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(f):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(g):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(f: PolyElement, g: PolyElement, var: Union[str, int] = 0) -> PolyElement:
    """Res_var(f, g) as the determinant of the Sylvester matrix."""
    ring = f.ring
    index = var if isinstance(var, int) else ring.symbols.index(sympy.Symbol(var))
    if not f and not g:
        raise UndefinedInputError("resultant of two zero polynomials is undefined")
    if not f or not g:
        return ring.zero
    fc = coeff_list(f, index)
    gc = coeff_list(g, index)
    if len(fc) == 1 and len(gc) == 1:
        return ring.one
    syl = sylvester_matrix(fc, gc, ring.zero)
    logger.debug("Resultant in %s of degrees %d and %d", ring.symbols[index], len(fc) - 1, len(gc) - 1)
    return det_fraction_free(syl, ring.one)


def resultant_coeffs(f: Sequence[Any], g: Sequence[Any], zero: Any, one: Any) -> Any:
    """Resultant of two univariate polynomials given by coefficient lists."""
    if not any(f) and not any(g):
        raise UndefinedInputError("resultant of two zero polynomials is undefined")
    f = _strip(f)
    g = _strip(g)
    if not f or not g:
        return zero
    if len(f) == 1 and len(g) == 1:
        return one
    return det_fraction_free(sylvester_matrix(f, g, zero), one)


def _strip(coeffs: Sequence[Any]) -> List[Any]:
    coeffs = list(coeffs)
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
    return coeffs


def to_exact_matrix(M: Any) -> Matrix:
    if isinstance(M, sympy.MatrixBase):
        return [[to_scalar(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
    return [[to_scalar(v) for v in row] for row in M]


def _rref(M: Matrix, ncols: int) -> Tuple[Matrix, List[int]]:
    A = [list(row) for row in M]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(A)) if A[i][c]), None)
        if pivot_row is None:
            continue
        A[r], A[pivot_row] = A[pivot_row], A[r]
        inv = 1 / A[r][c] if not isinstance(A[r][c], QQ_I.dtype) else QQ_I.one / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                factor = A[i][c]
                A[i] = [a - factor * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank_exact(M: Matrix) -> int:
    if not M:
        return 0
    M = to_exact_matrix(M)
    _, pivots = _rref(M, len(M[0]))
    return len(pivots)


def nullspace_exact(M: Matrix, ncols: Optional[int] = None) -> List[List[Any]]:
    """Exact kernel basis; ``len(result) == ncols - rank``."""
    M = to_exact_matrix(M)
    if ncols is None:
        if not M:
            raise UsageError("nullspace of an empty matrix needs ncols")
        ncols = len(M[0])
    if not M:
        return [[QQ_I.one if i == j else QQ_I.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = _rref(M, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [QQ_I.zero] * ncols
        v[f] = QQ_I.one
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve_exact(A: Matrix, b: Sequence[Any]) -> Optional[List[Any]]:
    """One exact solution of Ax = b with free variables set to zero, or None."""
    A = to_exact_matrix(A)
    b = [to_scalar(v) for v in b]
    ncols = len(A[0]) if A else 0
    aug = [row + [v] for row, v in zip(A, b)]
    R, pivots = _rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [QQ_I.zero] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    inner = len(B)
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), A[i][0] * 0)
             for j in range(len(B[0]))] for i in range(len(A))]


def mat_vec(A: Matrix, v: Sequence[Any]) -> List[Any]:
    return [sum((a * x for a, x in zip(row, v)), row[0] * 0) for row in A]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def is_zero_matrix(A: Matrix) -> bool:
    return all(not v for row in A for v in row)


def identity(n: int) -> Matrix:
    return [[QQ_I.one if i == j else QQ_I.zero for j in range(n)] for i in range(n)]


def zeros(n: int, m: Optional[int] = None) -> Matrix:
    return [[QQ_I.zero] * (n if m is None else m) for _ in range(n)]
