"""Grid patches and their derivative backends.

Periodic squares of side L use FFT derivatives; Dirichlet unit squares use
4th-order central differences with one-sided closures on the two outer rows.
Arrays are indexed [iy, ix, ...]: axis 0 is y, axis 1 is x, and any trailing
axes (vector or matrix components) are carried along untouched.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from core.config import MAX_GRID
from core.errors import UsageError

logger = logging.getLogger(__name__)

GEOMETRIES = ('periodic', 'dirichlet')

# numerators over 12 h
_D1_EDGE = ((-25, 48, -36, 16, -3), (-3, -10, 18, -6, 1))
_D1_CENTRAL = (1, -8, 0, 8, -1)


def fd_matrix(N: int, h: float) -> sparse.csr_matrix:
    """1-D first-derivative matrix, 4th-order accurate on every row."""
    M = sparse.lil_matrix((N, N))
    half = len(_D1_CENTRAL) // 2
    for i in range(half, N - half):
        for offset, c in enumerate(_D1_CENTRAL):
            M[i, i - half + offset] = c
    for i, stencil in enumerate(_D1_EDGE):
        for j, c in enumerate(stencil):
            M[i, j] = c
            M[N - 1 - i, N - 1 - j] = -c
    return (M.tocsr() / (12.0 * h)).tocsr()


@dataclass(frozen=True)
class FieldPatch:
    N: int
    geometry: str = 'periodic'
    L: float = 2 * np.pi

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise UsageError(f"unknown geometry '{self.geometry}'", {'known': list(GEOMETRIES)})
        minimum = 6 if self.geometry == 'dirichlet' else 4
        if self.N < minimum:
            raise UsageError(f"{self.geometry} patches need N >= {minimum}, got {self.N}")
        if self.N > MAX_GRID:
            raise UsageError(f"grid size N={self.N} exceeds the configured maximum {MAX_GRID}")
        if self.geometry == 'dirichlet' and self.L != 1.0:
            object.__setattr__(self, 'L', 1.0)

    @classmethod
    def periodic(cls, N: int, L: float = 2 * np.pi) -> 'FieldPatch':
        return cls(N, 'periodic', L)

    @classmethod
    def dirichlet(cls, N: int) -> 'FieldPatch':
        return cls(N, 'dirichlet', 1.0)

    @property
    def backend(self) -> str:
        return 'spectral' if self.geometry == 'periodic' else 'fd4'

    @property
    def order(self) -> Optional[int]:
        """Convergence order of the backend; None means spectral."""
        return None if self.geometry == 'periodic' else 4

    @property
    def h(self) -> float:
        if self.geometry == 'periodic':
            return self.L / self.N
        return 1.0 / (self.N - 1)

    @cached_property
    def axis(self) -> np.ndarray:
        if self.geometry == 'periodic':
            return np.arange(self.N) * self.h
        return np.linspace(0.0, 1.0, self.N)

    @cached_property
    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        X, Y = np.meshgrid(self.axis, self.axis, indexing='xy')
        return X, Y

    @property
    def z(self) -> np.ndarray:
        X, Y = self.coordinates
        return X + 1j * Y

    @property
    def center(self) -> complex:
        mid = self.L / 2 if self.geometry == 'periodic' else 0.5
        return complex(mid, mid)

    @cached_property
    def boundary_mask(self) -> np.ndarray:
        mask = np.zeros((self.N, self.N), dtype=bool)
        if self.geometry == 'dirichlet':
            mask[0, :] = mask[-1, :] = mask[:, 0] = mask[:, -1] = True
        return mask

    def refine(self) -> 'FieldPatch':
        """Same geometry with h halved."""
        if self.geometry == 'periodic':
            return FieldPatch(2 * self.N, 'periodic', self.L)
        return FieldPatch(2 * self.N - 1, 'dirichlet', 1.0)

    def zeros(self, *trailing: int) -> np.ndarray:
        return np.zeros((self.N, self.N) + tuple(trailing), dtype=complex)

    # spectral backend

    @cached_property
    def _wavenumbers(self) -> np.ndarray:
        k = 2 * np.pi * np.fft.fftfreq(self.N, d=self.h)
        if self.N % 2 == 0:
            k[self.N // 2] = 0.0
        return k

    def _spectral(self, f: np.ndarray, axis: int) -> np.ndarray:
        shape = [1] * f.ndim
        shape[axis] = self.N
        k = self._wavenumbers.reshape(shape)
        return np.fft.ifft(1j * k * np.fft.fft(f, axis=axis), axis=axis)

    # finite-difference backend

    @cached_property
    def _d1(self) -> sparse.csr_matrix:
        return fd_matrix(self.N, self.h)

    @cached_property
    def _d2(self) -> sparse.csr_matrix:
        # square of _d1, the way curvature composes d and dbar
        return (self._d1 @ self._d1).tocsr()

    @staticmethod
    def _apply(matrix: sparse.csr_matrix, f: np.ndarray, axis: int) -> np.ndarray:
        moved = np.moveaxis(f, axis, 0)
        shape = moved.shape
        out = matrix @ moved.reshape(shape[0], -1)
        return np.moveaxis(np.asarray(out).reshape(shape), 0, axis)

    def _check(self, f: Any) -> np.ndarray:
        f = np.asarray(f, dtype=complex)
        if f.ndim < 2 or f.shape[:2] != (self.N, self.N):
            raise UsageError(f"field of shape {f.shape} does not live on an {self.N}x{self.N} patch")
        return f

    def dx(self, f: Any) -> np.ndarray:
        f = self._check(f)
        if self.geometry == 'periodic':
            return self._spectral(f, 1)
        return self._apply(self._d1, f, 1)

    def dy(self, f: Any) -> np.ndarray:
        f = self._check(f)
        if self.geometry == 'periodic':
            return self._spectral(f, 0)
        return self._apply(self._d1, f, 0)

    def d(self, f: Any) -> np.ndarray:
        """Holomorphic derivative (d/dx - i d/dy) / 2."""
        return 0.5 * (self.dx(f) - 1j * self.dy(f))

    def dbar(self, f: Any) -> np.ndarray:
        return 0.5 * (self.dx(f) + 1j * self.dy(f))

    def dd_bar(self, f: Any) -> np.ndarray:
        """d dbar f = Laplacian / 4, the composition of the first-derivative backends."""
        f = self._check(f)
        if self.geometry == 'periodic':
            return self.d(self.dbar(f))
        return 0.25 * (self._apply(self._d2, f, 1) + self._apply(self._d2, f, 0))

    def dd_bar_matrix(self) -> sparse.csr_matrix:
        """Sparse d dbar on the flattened grid (index iy * N + ix)."""
        if self.geometry == 'periodic':
            raise UsageError("the sparse Laplacian is only assembled on Dirichlet patches")
        eye = sparse.identity(self.N, format='csr')
        return (0.25 * (sparse.kron(eye, self._d2) + sparse.kron(self._d2, eye))).tocsr()

    def _inverse(self, f: Any, symbol: np.ndarray) -> np.ndarray:
        if self.geometry != 'periodic':
            raise UsageError("inverting d or dbar needs a periodic patch")
        f = self._check(f)
        fh = np.fft.fft2(f, axes=(0, 1))
        extra = (1,) * (f.ndim - 2)
        symbol = symbol.reshape(symbol.shape + extra)
        with np.errstate(divide='ignore', invalid='ignore'):
            vh = np.where(symbol != 0, fh / np.where(symbol != 0, symbol, 1.0), 0.0)
        return np.fft.ifft2(vh, axes=(0, 1))

    def solve_d(self, f: Any) -> np.ndarray:
        """Mean-zero periodic solution v of d v = f (f is taken mean-zero)."""
        ky, kx = np.meshgrid(self._wavenumbers, self._wavenumbers, indexing='ij')
        return self._inverse(f, 0.5 * (1j * kx + ky))

    def solve_dbar(self, f: Any) -> np.ndarray:
        ky, kx = np.meshgrid(self._wavenumbers, self._wavenumbers, indexing='ij')
        return self._inverse(f, 0.5 * (1j * kx - ky))

    def mean(self, f: Any) -> complex:
        return complex(np.mean(self._check(f)))

    def to_dict(self) -> Dict[str, Any]:
        return {'N': self.N, 'L': self.L, 'geometry': self.geometry, 'backend': self.backend}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FieldPatch':
        try:
            return cls(int(data['N']), data.get('geometry', 'periodic'), float(data.get('L', 2 * np.pi)))
        except KeyError as e:
            raise UsageError(f"field header is missing {e}")


def refinement_ratio(errors: Sequence[float]) -> float:
    """Error ratio between consecutive refinements; 2^order is expected for an order-h^order scheme."""
    if len(errors) < 2 or errors[1] == 0:
        return float('inf')
    return float(errors[0] / errors[1])
