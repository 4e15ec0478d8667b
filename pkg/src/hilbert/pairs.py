"""Commuting matrix pairs: multiplication operators, cyclic vectors, joint spectra."""
import logging
import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from scipy.linalg import schur
from sklearn.cluster import AgglomerativeClustering
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement

from algebra import (commutator, constant_value, identity, is_zero_matrix, mat_mul, mat_vec,
                     random_nonzero_scalar, rank_exact, scalar_to_json, to_complex, to_scalar)
from core.config import CHOW_CLUSTER_TOL, CHOW_GAP, CHOW_RETRIES, CYCLIC_ATTEMPTS, DEFAULT_SEED
from core.errors import ConstraintError, NumericFailure, UsageError
from .ideal import Ideal, express, quotient_basis

logger = logging.getLogger(__name__)

NUMERIC_COMMUTE_TOL = 1e-12


class CommutingPair:
    """Pair (A, B) with [A, B] = 0, exact (nested lists) or numeric (complex arrays)."""

    def __init__(self, A: Any, B: Any, numeric: bool = False, check: bool = True):
        self.numeric = numeric
        if numeric:
            self.A = np.asarray(A, dtype=complex)
            self.B = np.asarray(B, dtype=complex)
        else:
            self.A = [list(row) for row in A]
            self.B = [list(row) for row in B]
        if check:
            self._check()

    @property
    def n(self) -> int:
        return len(self.A)

    def _check(self):
        if self.numeric:
            gap = np.linalg.norm(self.A @ self.B - self.B @ self.A)
            scale = max(np.linalg.norm(self.A) * np.linalg.norm(self.B), 1.0)
            if gap > NUMERIC_COMMUTE_TOL * scale:
                raise ConstraintError(f"matrices do not commute (|[A,B]| = {gap:.3e})")
        elif not is_zero_matrix(commutator(self.A, self.B)):
            raise ConstraintError("matrices do not commute")

    def is_symbolic(self) -> bool:
        if self.numeric:
            return False
        return any(isinstance(v, PolyElement) and any(any(m) for m in v.monoms())
                   for row in self.A + self.B for v in row)

    def exact(self) -> 'CommutingPair':
        """Scalar-entry copy; symbolic entries must be constants."""
        if self.numeric:
            raise UsageError("numeric pair has no exact form")
        conv = lambda v: constant_value(v) if isinstance(v, PolyElement) else to_scalar(v)
        try:
            A = [[conv(v) for v in row] for row in self.A]
            B = [[conv(v) for v in row] for row in self.B]
        except UsageError:
            raise UsageError("pair has symbolic entries; substitute values first")
        return CommutingPair(A, B, check=False)

    def to_numeric(self) -> 'CommutingPair':
        if self.numeric:
            return self
        pair = self.exact()
        A = [[to_complex(v) for v in row] for row in pair.A]
        B = [[to_complex(v) for v in row] for row in pair.B]
        return CommutingPair(A, B, numeric=True, check=False)

    def to_sympy(self) -> Tuple[sympy.Matrix, sympy.Matrix]:
        conv = lambda v: v.as_expr() if isinstance(v, PolyElement) else QQ_I.to_sympy(to_scalar(v))
        return (sympy.Matrix([[conv(v) for v in row] for row in self.A]),
                sympy.Matrix([[conv(v) for v in row] for row in self.B]))

    def to_dict(self) -> Dict[str, Any]:
        if self.numeric:
            enc = lambda M: [[{'re': float(v.real), 'im': float(v.imag)} for v in row] for row in M]
            return {'A': enc(self.A), 'B': enc(self.B), 'numeric': True}
        A, B = self.to_sympy()
        enc = lambda M: [[str(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
        return {'A': enc(A), 'B': enc(B), 'numeric': False}


def mult_ops(ideal: Ideal) -> CommutingPair:
    """Matrices of multiplication by x and y on the chart basis; column k is the image of basis k."""
    data = quotient_basis(ideal)
    basis = data.basis
    index = {b: k for k, b in enumerate(basis)}
    zero = ideal.ring.zero
    n = len(basis)
    A = [[zero] * n for _ in range(n)]
    B = [[zero] * n for _ in range(n)]
    for col, (i, j) in enumerate(basis):
        for M, image in ((A, (i + 1, j)), (B, (i, j + 1))):
            combo = {image: ideal.ring.one} if image in index else express(ideal, image, basis)
            for mono, coeff in combo.items():
                M[index[mono]][col] = coeff
    logger.debug("Multiplication operators of size %d", n)
    return CommutingPair(A, B)


def _krylov(A, B, v, n: int) -> Tuple[List[list], List[Tuple[int, int]]]:
    """Span of A^i B^j v grown breadth first; returns vectors and their words."""
    vectors, words = [v], [(0, 0)]
    frontier = [(v, (0, 0))]
    while frontier and len(vectors) < n:
        nxt = []
        for w, (i, j) in frontier:
            for M, word in ((A, (i + 1, j)), (B, (i, j + 1))):
                if word in words:
                    continue
                u = mat_vec(M, w)
                if rank_exact(vectors + [u]) > len(vectors):
                    vectors.append(u)
                    words.append(word)
                    nxt.append((u, word))
        frontier = nxt
    return vectors, words


def algebra_dimension(A, B, n: int) -> int:
    """dim C[A, B] as a space of matrices."""
    flat = lambda M: [v for row in M for v in row]
    mats = [identity(n)]
    words = [(0, 0)]
    frontier = [(identity(n), (0, 0))]
    while frontier:
        nxt = []
        for M, (i, j) in frontier:
            for G, word in ((A, (i + 1, j)), (B, (i, j + 1))):
                if word in words:
                    continue
                P = mat_mul(G, M)
                if rank_exact([flat(m) for m in mats + [P]]) > len(mats):
                    mats.append(P)
                    words.append(word)
                    nxt.append((P, word))
        frontier = nxt
    return len(mats)


def is_cyclic(pair: CommutingPair, seed: int = DEFAULT_SEED) -> Tuple[bool, Dict[str, Any]]:
    """Cyclic-vector test with a random exact vector plus an exact certificate.

    dim C[A, B] = n is necessary. When random vectors fail the generic
    Krylov determinant over a symbolic vector is expanded; an identically
    zero determinant certifies that no cyclic vector exists.
    """
    exact = pair.exact()
    A, B, n = exact.A, exact.B, exact.n
    alg_dim = algebra_dimension(A, B, n)
    certificate: Dict[str, Any] = {'algebra_dim': alg_dim, 'n': n}
    if alg_dim < n:
        certificate['reason'] = 'algebra dimension below n'
        return False, certificate

    rng = random.Random(seed)
    best = 0
    for attempt in range(CYCLIC_ATTEMPTS):
        v = [random_nonzero_scalar(rng, height=31) for _ in range(n)]
        vectors, words = _krylov(A, B, v, n)
        best = max(best, len(vectors))
        if len(vectors) == n:
            certificate.update({'vector': [scalar_to_json(c) for c in v],
                                'words': [list(w) for w in words], 'attempts': attempt + 1})
            return True, certificate

    symbols = sympy.symbols(f'v0:{n}')
    As, Bs = CommutingPair(A, B, check=False).to_sympy()
    vec = sympy.Matrix(symbols)
    algebra_words = _algebra_words(A, B, n)
    columns = [As ** i * Bs ** j * vec for i, j in algebra_words[:n]]
    det = sympy.expand(sympy.Matrix.hstack(*columns).det())
    certificate.update({'krylov_dim': best, 'generic_det_zero': det == 0})
    if det != 0:
        logger.warning("Random vectors missed a cyclic vector; generic determinant is nonzero")
        return True, certificate
    certificate['reason'] = 'generic Krylov determinant vanishes'
    return False, certificate


def _algebra_words(A, B, n: int) -> List[Tuple[int, int]]:
    flat = lambda M: [v for row in M for v in row]
    words, mats = [(0, 0)], [identity(n)]
    for total in range(1, 2 * n):
        for i in range(total + 1):
            word = (i, total - i)
            M = identity(n)
            for _ in range(word[0]):
                M = mat_mul(A, M)
            for _ in range(word[1]):
                M = mat_mul(B, M)
            if rank_exact([flat(m) for m in mats + [M]]) > len(mats):
                mats.append(M)
                words.append(word)
    return words


def _cluster(values: np.ndarray, tol: float) -> np.ndarray:
    if len(values) == 1:
        return np.zeros(1, dtype=int)
    features = np.column_stack([values.real, values.imag])
    model = AgglomerativeClustering(n_clusters=None, distance_threshold=tol, linkage='single')
    return model.fit_predict(features)


def chow(pair: CommutingPair, seed: int = DEFAULT_SEED) -> List[Tuple[complex, complex, int]]:
    """Joint spectrum of a commuting pair with multiplicities: [(x, y, mult), ...]."""
    P = pair.to_numeric()
    A, B, n = P.A, P.B, P.n
    rng = np.random.default_rng(seed)
    scale = max(np.linalg.norm(A), np.linalg.norm(B), 1.0)
    tol = max(CHOW_CLUSTER_TOL, 10 * (np.finfo(float).eps * scale) ** (1.0 / n))

    last_error = None
    for attempt in range(CHOW_RETRIES):
        alpha, beta = rng.normal(size=2) + 1j * rng.normal(size=2)
        C = alpha * A + beta * B
        T, _ = schur(C, output='complex')
        eig = np.diag(T)
        labels = _cluster(eig, tol)
        centers = [eig[labels == k].mean() for k in sorted(set(labels))]
        gaps = [abs(a - b) for i, a in enumerate(centers) for b in centers[i + 1:]]
        if gaps and min(gaps) <= max(CHOW_GAP, 100 * tol):
            logger.debug("Combination %d does not separate the spectrum; retrying", attempt)
            continue
        result = []
        worst = 0.0
        for center, k in zip(centers, sorted(set(labels))):
            mult = int(np.sum(labels == k))
            _, Z, sdim = schur(C, output='complex', sort=lambda z, c=center: abs(z - c) <= 100 * tol)
            Z1 = Z[:, :sdim]
            Ar = Z1.conj().T @ A @ Z1
            Br = Z1.conj().T @ B @ Z1
            a = np.trace(Ar) / sdim
            b = np.trace(Br) / sdim
            worst = max(worst, _nilpotency_defect(Ar - a * np.eye(sdim)),
                        _nilpotency_defect(Br - b * np.eye(sdim)))
            result.append((complex(a), complex(b), mult))
        if worst > 1e3 * tol * scale:
            last_error = NumericFailure("joint triangularization failed", worst)
            continue
        result.sort(key=lambda r: (round(r[0].real, 8), round(r[0].imag, 8), round(r[1].real, 8)))
        return result
    raise last_error or NumericFailure("could not separate the joint spectrum", None,
                                       {'retries': CHOW_RETRIES})


def _nilpotency_defect(M: np.ndarray) -> float:
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def support(pair: CommutingPair, seed: int = DEFAULT_SEED) -> List[Tuple[complex, complex]]:
    """Joint spectrum as a flat multiset."""
    points = []
    for x, y, mult in chow(pair, seed):
        points.extend([(x, y)] * mult)
    return points


def zero_fiber_pair(n: int, mu: Sequence[Any]) -> CommutingPair:
    """Nilpotent pair (M_x, M_y) of <x^n, -y + mu_2 x + ... + mu_n x^(n-1)>; mu lists mu_2..mu_n."""
    if n < 1:
        raise UsageError("order must be positive")
    shift = [[QQ_I.one if i == j + 1 else QQ_I.zero for j in range(n)] for i in range(n)]
    B = [[QQ_I.zero] * n for _ in range(n)]
    power = identity(n)
    for c in mu[:n - 1]:
        power = mat_mul(shift, power)
        c = to_scalar(c)
        B = [[b + c * p for b, p in zip(rb, rp)] for rb, rp in zip(B, power)]
    return CommutingPair(shift, B)


def barycenter(pair: CommutingPair) -> Tuple[Any, Any]:
    """(tr A / n, tr B / n): the barycenter of the support."""
    n = pair.n
    if pair.numeric:
        return complex(np.trace(pair.A) / n), complex(np.trace(pair.B) / n)
    trA = sum((pair.A[i][i] for i in range(n)), pair.A[0][0] * 0)
    trB = sum((pair.B[i][i] for i in range(n)), pair.B[0][0] * 0)
    inv = QQ_I.one / QQ_I(n, 0)
    return trA * inv, trB * inv
