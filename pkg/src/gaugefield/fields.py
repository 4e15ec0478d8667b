"""Matrix-valued fields: an n x n complex matrix per grid node."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from core.errors import ConstraintError, UsageError
from .patch import FieldPatch

logger = logging.getLogger(__name__)

TAGS = ('companion', 'lower', 'strict_lower', 'upper', 'traceless')
TAG_TOL = 1e-9


def _tag_defect(data: np.ndarray, tag: str) -> float:
    n = data.shape[-1]
    if tag == 'traceless':
        return float(np.max(np.abs(np.trace(data, axis1=-2, axis2=-1)), initial=0.0))
    rows, cols = np.indices((n, n))
    if tag == 'lower':
        mask = cols > rows
        target = np.zeros((n, n))
    elif tag == 'strict_lower':
        mask = cols >= rows
        target = np.zeros((n, n))
    elif tag == 'upper':
        mask = rows > cols
        target = np.zeros((n, n))
    else:
        mask = cols < n - 1
        target = (rows == cols + 1).astype(float)
    return float(np.max(np.abs(data[..., mask] - target[mask]), initial=0.0))


@dataclass(frozen=True, eq=False)
class MatrixField:
    data: np.ndarray
    tags: Tuple[str, ...] = ()

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != 4 or data.shape[0] != data.shape[1] or data.shape[2] != data.shape[3]:
            raise UsageError(f"matrix field must have shape (N, N, n, n), got {data.shape}")
        object.__setattr__(self, 'data', data)
        object.__setattr__(self, 'tags', tuple(self.tags))
        for tag in self.tags:
            self.require(tag)

    def require(self, tag: str, tol: float = TAG_TOL) -> None:
        if tag not in TAGS:
            raise UsageError(f"unknown structural tag '{tag}'", {'known': list(TAGS)})
        defect = _tag_defect(self.data, tag)
        scale = 1.0 + float(np.max(np.abs(self.data), initial=0.0))
        if defect > tol * scale:
            raise ConstraintError(f"matrix field is not {tag}", {'defect': defect})

    @property
    def n(self) -> int:
        return self.data.shape[-1]

    @property
    def N(self) -> int:
        return self.data.shape[0]

    @classmethod
    def zeros(cls, patch: FieldPatch, n: int) -> 'MatrixField':
        return cls(patch.zeros(n, n))

    @classmethod
    def constant(cls, patch: FieldPatch, matrix: Any, tags: Iterable[str] = ()) -> 'MatrixField':
        matrix = np.asarray(matrix, dtype=complex)
        return cls(np.broadcast_to(matrix, (patch.N, patch.N) + matrix.shape).copy(), tuple(tags))

    @classmethod
    def from_entries(cls, patch: FieldPatch, entries: Sequence[Sequence[Any]],
                     tags: Iterable[str] = ()) -> 'MatrixField':
        """Entries may be scalars or (N, N) arrays."""
        n = len(entries)
        data = patch.zeros(n, n)
        for i, row in enumerate(entries):
            if len(row) != n:
                raise UsageError("matrix field entries must form a square table")
            for j, value in enumerate(row):
                data[:, :, i, j] = value
        return cls(data, tuple(tags))

    def entry(self, i: int, j: int) -> np.ndarray:
        return self.data[:, :, i, j]

    def __add__(self, other: 'MatrixField') -> 'MatrixField':
        return MatrixField(self.data + other.data)

    def __sub__(self, other: 'MatrixField') -> 'MatrixField':
        return MatrixField(self.data - other.data)

    def __neg__(self) -> 'MatrixField':
        return MatrixField(-self.data)

    def __matmul__(self, other: 'MatrixField') -> 'MatrixField':
        return MatrixField(self.data @ other.data)

    def scale(self, factor: Any) -> 'MatrixField':
        factor = np.asarray(factor, dtype=complex)
        if factor.ndim == 2:
            factor = factor[:, :, None, None]
        return MatrixField(self.data * factor)

    def dagger(self) -> 'MatrixField':
        """Pointwise conjugate transpose."""
        return MatrixField(np.conj(np.swapaxes(self.data, -1, -2)))

    def inverse(self) -> 'MatrixField':
        return MatrixField(np.linalg.inv(self.data))

    def det(self) -> np.ndarray:
        return np.linalg.det(self.data)

    def trace(self) -> np.ndarray:
        return np.trace(self.data, axis1=-2, axis2=-1)

    def power(self, k: int) -> 'MatrixField':
        return MatrixField(np.linalg.matrix_power(self.data, k))

    def commutator(self, other: 'MatrixField') -> 'MatrixField':
        return MatrixField(self.data @ other.data - other.data @ self.data)

    def d(self, patch: FieldPatch) -> 'MatrixField':
        return MatrixField(patch.d(self.data))

    def dbar(self, patch: FieldPatch) -> 'MatrixField':
        return MatrixField(patch.dbar(self.data))

    def max_abs(self, mask: Optional[np.ndarray] = None) -> float:
        values = np.abs(self.data)
        if mask is not None:
            values = values[mask]
        return float(np.max(values, initial=0.0))

    def summary(self) -> Dict[str, Any]:
        return {'n': self.n, 'N': self.N, 'tags': list(self.tags), 'max_abs': self.max_abs()}


def companion_field(patch: FieldPatch, coefficients: Dict[int, Any], n: int) -> MatrixField:
    """Ones on the subdiagonal, t_k in row n - k of the last column, zero in the corner."""
    data = patch.zeros(n, n)
    for i in range(1, n):
        data[:, :, i, i - 1] = 1.0
    for k, value in coefficients.items():
        if not 2 <= k <= n:
            raise UsageError(f"companion coefficient index {k} outside 2..{n}")
        data[:, :, n - k, n - 1] = value
    return MatrixField(data, ('companion',))


def gauge_transform(patch: FieldPatch, g: MatrixField, A: MatrixField, part: str = 'd') -> MatrixField:
    """g A g^-1 + g d(g^-1) (part 'd') or with dbar (part 'dbar')."""
    ginv = g.inverse()
    derivative = ginv.d(patch) if part == 'd' else ginv.dbar(patch)
    return g @ A @ ginv + g @ derivative
