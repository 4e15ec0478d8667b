"""Damped Newton solver for the elliptic systems on Dirichlet patches."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from core.config import (ARMIJO_FACTOR, ARMIJO_FLOOR, NEWTON_MAX_ITER, NEWTON_STAGNATION,
                         NEWTON_TOL)
from core.errors import SolverFailure, UsageError
from .patch import FieldPatch
from .systems import cartan_matrix, pde_residual, system_order, vacuum_fields

logger = logging.getLogger(__name__)

ARMIJO_SLOPE = 1e-4


@dataclass(eq=False)
class SolveResult:
    system: str
    n: int
    phis: List[np.ndarray]
    iterations: int
    history: List[float]
    residual: float
    flatness: float

    def to_dict(self) -> Dict[str, Any]:
        return {'system': self.system, 'n': self.n, 'iterations': self.iterations,
                'residual': self.residual, 'flatness': self.flatness, 'history': self.history}


class _Discretization:
    """Residual and Jacobian of one system restricted to interior nodes."""

    def __init__(self, patch: FieldPatch, system: str, n: int, t: Any):
        self.patch = patch
        self.system = system
        self.components = 1 if system != 'toda' else n - 1
        self.cartan = cartan_matrix(n)
        self.t2 = np.zeros((patch.N, patch.N)) if t is None else \
            np.broadcast_to(np.abs(np.asarray(t)) ** 2, (patch.N, patch.N))
        self.interior = np.flatnonzero(~patch.boundary_mask.ravel())
        lap = patch.dd_bar_matrix()
        self.L = lap[self.interior][:, self.interior].tocsr()
        self.L_boundary = lap[self.interior]

    def unpack(self, phis: List[np.ndarray], x: np.ndarray) -> List[np.ndarray]:
        size = len(self.interior)
        out = []
        for c, phi in enumerate(phis):
            flat = phi.ravel().copy()
            flat[self.interior] = x[c * size:(c + 1) * size]
            out.append(flat.reshape(phi.shape))
        return out

    def pack(self, phis: List[np.ndarray]) -> np.ndarray:
        return np.concatenate([phi.ravel()[self.interior] for phi in phis])

    def residual(self, phis: List[np.ndarray]) -> np.ndarray:
        lap = [self.L_boundary @ phi.ravel() for phi in phis]
        ex = [np.exp(2 * phi.ravel()[self.interior]) for phi in phis]
        t2 = self.t2.ravel()[self.interior]
        if self.system == 'cosh-gordon':
            phi = phis[0].ravel()[self.interior]
            return lap[0] - ex[0] - t2 * np.exp(-2 * phi)
        if self.system == 'titeica':
            phi = phis[0].ravel()[self.interior]
            return 2 * lap[0] - ex[0] - t2 * np.exp(-4 * phi)
        return np.concatenate([2 * lap[i] - sum(self.cartan[i, j] * ex[j] for j in range(self.components))
                               for i in range(self.components)])

    def jacobian(self, phis: List[np.ndarray]) -> sparse.csr_matrix:
        t2 = self.t2.ravel()[self.interior]
        if self.system == 'cosh-gordon':
            phi = phis[0].ravel()[self.interior]
            return (self.L - sparse.diags(2 * np.exp(2 * phi) - 2 * t2 * np.exp(-2 * phi))).tocsc()
        if self.system == 'titeica':
            phi = phis[0].ravel()[self.interior]
            return (2 * self.L - sparse.diags(2 * np.exp(2 * phi) - 4 * t2 * np.exp(-4 * phi))).tocsc()
        blocks = []
        for i in range(self.components):
            row = []
            for j in range(self.components):
                ex = np.exp(2 * phis[j].ravel()[self.interior])
                block = -sparse.diags(2 * self.cartan[i, j] * ex)
                if i == j:
                    block = block + 2 * self.L
                row.append(block)
            blocks.append(row)
        return sparse.bmat(blocks).tocsc()


def _initial(patch: FieldPatch, boundary: List[Any]) -> List[np.ndarray]:
    fields = []
    for data in boundary:
        values = np.array(np.broadcast_to(np.real(data), (patch.N, patch.N)), dtype=float)
        start = values.copy()
        start[~patch.boundary_mask] = float(np.mean(values[patch.boundary_mask]))
        fields.append(start)
    return fields


def newton_solve(patch: FieldPatch, system: str, boundary: Optional[List[Any]] = None, t: Any = None,
                 n: Optional[int] = None, tol: float = NEWTON_TOL * 1e-2,
                 max_iter: int = NEWTON_MAX_ITER) -> SolveResult:
    """Armijo-damped Newton iteration; boundary values stay fixed at the given data.

    Without boundary data the vacuum solution supplies both the boundary
    values and the starting point.

    Raises SolverFailure when the best residual has not decreased for
    NEWTON_STAGNATION iterations or the iteration budget runs out.
    """
    if patch.geometry != 'dirichlet':
        raise UsageError("newton_solve needs a Dirichlet patch: the equations have no closed-patch solutions")
    order = system_order(system, n)
    if system == 'toda' and t is not None:
        raise UsageError("the Toda system is solved with t = 0")
    scheme = _Discretization(patch, system, order, t)
    if boundary is not None:
        boundary = [boundary] if isinstance(boundary, np.ndarray) and boundary.ndim == 2 else list(boundary)
        if len(boundary) != scheme.components:
            raise UsageError(f"{system} needs {scheme.components} boundary field(s), got {len(boundary)}")
        phis = _initial(patch, boundary)
    else:
        phis = vacuum_fields(patch, system, order)

    F = scheme.residual(phis)
    history = [float(np.max(np.abs(F)))]
    best, since_best = history[0], 0
    iterations = 0
    while history[-1] >= tol:
        if iterations >= max_iter:
            raise SolverFailure(f"{system} Newton iteration did not converge in {max_iter} steps", history)
        step = spsolve(scheme.jacobian(phis), -F)
        x = scheme.pack(phis)
        merit = np.linalg.norm(F)
        alpha = 1.0
        while True:
            trial = scheme.unpack(phis, x + alpha * step)
            F_trial = scheme.residual(trial)
            if np.all(np.isfinite(F_trial)) and np.linalg.norm(F_trial) <= (1 - ARMIJO_SLOPE * alpha) * merit:
                break
            if alpha * ARMIJO_FACTOR < ARMIJO_FLOOR:
                break
            alpha *= ARMIJO_FACTOR
        if np.all(np.isfinite(F_trial)):
            phis, F = trial, F_trial
        iterations += 1
        history.append(float(np.max(np.abs(F))))
        logger.debug("%s Newton step %d: alpha=%.4g residual=%.3e", system, iterations, alpha, history[-1])
        if history[-1] < best:
            best, since_best = history[-1], 0
        else:
            since_best += 1
            if since_best >= NEWTON_STAGNATION:
                raise SolverFailure(f"{system} Newton iteration stagnated", history)

    report = pde_residual(patch, system, phis if system == 'toda' else phis[0], t, order)
    logger.info("Solved %s on N=%d in %d steps: residual %.3e, flatness %.3e",
                system, patch.N, iterations, history[-1], report.flatness_max)
    return SolveResult(system, order, phis, iterations, history, history[-1], report.flatness_max)
