"""Parabolic gauge reduction, curvature and holomorphic differentials of matrix fields."""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.config import GAUGE_DET_THRESHOLD
from core.errors import DegenerateGaugeError, UsageError
from .fields import MatrixField, companion_field
from .patch import FieldPatch

logger = logging.getLogger(__name__)

LOCUS_LIMIT = 50


def _apply(A: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum('...ij,...j->...i', A, v)


def _krylov(patch: FieldPatch, A1: MatrixField, s: np.ndarray) -> List[np.ndarray]:
    """s, N s, ..., N^n s with N s = d s + A1 s."""
    vectors = [s]
    for _ in range(A1.n):
        v = vectors[-1]
        vectors.append(patch.d(v) + _apply(A1.data, v))
    return vectors


def _first_vector(shape: Tuple[int, ...], n: int) -> np.ndarray:
    e0 = np.zeros(shape + (n,), dtype=complex)
    e0[..., 0] = 1.0
    return e0


def _check_generic(G: np.ndarray, threshold: float) -> None:
    small = np.abs(G) < threshold
    if np.any(small):
        locus = np.argwhere(small)[:LOCUS_LIMIT].tolist()
        raise DegenerateGaugeError(f"parabolic gauge degenerates at {int(small.sum())} nodes",
                                   locus, float(np.min(np.abs(G))))


@dataclass(eq=False)
class GaugeResult:
    P: MatrixField
    that: Dict[int, np.ndarray]
    companion_residual: float
    trace_defect: float
    det_defect: float
    genericity_min: float

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.P.n, 'companion_residual': self.companion_residual,
                'trace_defect': self.trace_defect, 'det_defect': self.det_defect,
                'genericity_min': self.genericity_min,
                'that_max_abs': {k: float(np.max(np.abs(v))) for k, v in self.that.items()}}


def parabolic_gauge(patch: FieldPatch, A1: MatrixField,
                    threshold: float = GAUGE_DET_THRESHOLD) -> GaugeResult:
    """Gauge d + A1 into companion form.

    The columns of P^-1 are s, N s, ..., N^(n-1) s for the section
    s = G^(-1/n) e_1, where G = det(e_1, N e_1, ..., N^(n-1) e_1) and
    N = d + A1. det P = 1, so the corner of the companion matrix vanishes up to
    discretization error, and N^n s = sum_k that_k N^(n-k) s.
    """
    n = A1.n
    e0 = _first_vector((patch.N, patch.N), n)
    raw = _krylov(patch, A1, e0)
    G = np.linalg.det(np.stack(raw[:n], axis=-1))
    _check_generic(G, threshold)

    sigma = np.power(G.astype(complex), -1.0 / n)
    vectors = _krylov(patch, A1, e0 * sigma[..., None])
    Q = np.stack(vectors[:n], axis=-1)
    coeffs = np.linalg.solve(Q, vectors[n][..., None])[..., 0]
    P = np.linalg.inv(Q)

    that = {k: coeffs[..., n - k] for k in range(2, n + 1)}
    gauged = P @ A1.data @ Q + P @ patch.d(Q)
    expected = companion_field(patch, that, n).data
    residual = float(np.max(np.abs(gauged - expected)))
    trace_defect = float(np.max(np.abs(coeffs[..., n - 1])))
    det_defect = float(np.max(np.abs(np.linalg.det(Q) - 1.0)))
    logger.debug("Parabolic gauge n=%d: companion residual %.3e, trace defect %.3e", n, residual, trace_defect)
    return GaugeResult(MatrixField(P), that, residual, trace_defect, det_defect, float(np.min(np.abs(G))))


def constant_parabolic_gauge(A1: np.ndarray, A2: Optional[np.ndarray] = None,
                             threshold: float = GAUGE_DET_THRESHOLD) -> Tuple[np.ndarray, Dict[int, complex], Dict[int, complex]]:
    """Pointwise version for constant matrices: returns P, that_k and muhat_k.

    muhat_k is read from the first column of P A2 P^-1.
    """
    A1 = np.asarray(A1, dtype=complex)
    n = A1.shape[0]
    columns = [np.eye(n, dtype=complex)[:, 0]]
    for _ in range(n):
        columns.append(A1 @ columns[-1])
    G = np.linalg.det(np.stack(columns[:n], axis=-1))
    _check_generic(np.asarray([G]), threshold)
    sigma = complex(G) ** (-1.0 / n)
    Q = sigma * np.stack(columns[:n], axis=-1)
    coeffs = np.linalg.solve(Q, sigma * columns[n])
    P = np.linalg.inv(Q)
    that = {k: complex(coeffs[n - k]) for k in range(2, n + 1)}
    muhat: Dict[int, complex] = {}
    if A2 is not None:
        first = P @ np.asarray(A2, dtype=complex) @ Q[:, 0]
        muhat = {k: complex(first[k - 1]) for k in range(1, n + 1)}
    return P, that, muhat


@dataclass(eq=False)
class CurvatureResult:
    F: MatrixField
    xi: Dict[int, np.ndarray]
    first_columns_max: float

    @property
    def max_abs(self) -> float:
        return self.F.max_abs()

    def to_dict(self) -> Dict[str, Any]:
        return {'max_abs': self.max_abs, 'first_columns_max': self.first_columns_max,
                'xi_max_abs': {k: float(np.max(np.abs(v))) for k, v in self.xi.items()}}


def curvature(patch: FieldPatch, A1: MatrixField, A2: MatrixField) -> CurvatureResult:
    """F = d A2 - dbar A1 + [A1, A2]; xi_k = -F[n-k, n-1]."""
    if A1.n != A2.n:
        raise UsageError(f"connection parts have sizes {A1.n} and {A2.n}")
    F = A2.d(patch) - A1.dbar(patch) + A1.commutator(A2)
    n = A1.n
    xi = {k: -F.entry(n - k, n - 1) for k in range(2, n + 1)}
    first = float(np.max(np.abs(F.data[..., :, :n - 1]), initial=0.0))
    return CurvatureResult(F, xi, first)


def parabolic_pair_n2(patch: FieldPatch, that: Any, muhat: Any) -> Tuple[MatrixField, MatrixField]:
    """Parabolic representative for n = 2 built from (that_2, muhat_2)."""
    t = np.broadcast_to(np.asarray(that, dtype=complex), (patch.N, patch.N))
    mu = np.broadcast_to(np.asarray(muhat, dtype=complex), (patch.N, patch.N))
    dmu = patch.d(mu)
    alpha = -0.5 * dmu
    beta = -0.5 * patch.d(dmu) + t * mu
    A1 = MatrixField.from_entries(patch, [[0.0, t], [1.0, 0.0]], ('companion',))
    A2 = MatrixField.from_entries(patch, [[alpha, beta], [mu, -alpha]], ('traceless',))
    return A1, A2


def xi2_closed_form(patch: FieldPatch, that: Any, muhat: Any) -> np.ndarray:
    """(dbar - mu d - 2 d mu) t + d^3 mu / 2."""
    t = np.broadcast_to(np.asarray(that, dtype=complex), (patch.N, patch.N))
    mu = np.broadcast_to(np.asarray(muhat, dtype=complex), (patch.N, patch.N))
    return (patch.dbar(t) - mu * patch.d(t) - 2 * t * patch.d(mu)
            + 0.5 * patch.d(patch.d(patch.d(mu))))


def _elementary(M: np.ndarray) -> List[np.ndarray]:
    """e_0..e_n of the eigenvalues of a stack of matrices, by Newton's identities."""
    n = M.shape[-1]
    powers = [np.eye(n, dtype=complex)]
    sums = []
    for _ in range(n):
        powers.append(powers[-1] @ M)
        sums.append(np.trace(powers[-1], axis1=-2, axis2=-1))
    e = [np.ones(M.shape[:-2], dtype=complex)]
    for k in range(1, n + 1):
        acc = sum(((-1) ** (j - 1) * e[k - j] * sums[j - 1] for j in range(1, k + 1)),
                  np.zeros(M.shape[:-2], dtype=complex))
        e.append(acc / k)
    return e


@dataclass(eq=False)
class TExtraction:
    t: Dict[int, np.ndarray]
    dbar_residual: Dict[int, float]
    charpoly_defect: float

    def to_dict(self) -> Dict[str, Any]:
        return {'t_max_abs': {k: float(np.max(np.abs(v))) for k, v in self.t.items()},
                'dbar_residual': self.dbar_residual, 'charpoly_defect': self.charpoly_defect}


def extract_t(patch: FieldPatch, Phi1: MatrixField, A1: MatrixField,
              mask: Optional[np.ndarray] = None) -> TExtraction:
    """t_k = tr(Phi1^(k-1) A1) with max |dbar t_k|.

    The characteristic-polynomial route is checked alongside: the lambda^(k-1)
    coefficient of e_k(lambda Phi1 + A1) equals (-1)^(k-1) t_k.
    """
    Phi1.require('strict_lower')
    n = A1.n
    t = {k: (Phi1.power(k - 1) @ A1).trace() for k in range(2, n + 1)}
    interior = mask if mask is not None else ~patch.boundary_mask
    residual = {k: float(np.max(np.abs(patch.dbar(v))[interior], initial=0.0)) for k, v in t.items()}

    samples = np.exp(2j * np.pi * np.arange(n) / n)
    elementary = [_elementary(lam * Phi1.data + A1.data) for lam in samples]
    defect = 0.0
    for k in range(2, n + 1):
        lead = sum(elementary[s][k] * samples[s] ** (-(k - 1)) for s in range(n)) / n
        defect = max(defect, float(np.max(np.abs(lead - (-1) ** (k - 1) * t[k]))))
    return TExtraction(t, residual, defect)
