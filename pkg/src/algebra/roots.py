"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration)."""
import logging
from typing import List, Sequence

import numpy as np

from core.config import ABERTH_MAX_ITER, ABERTH_TOL
from core.errors import NumericFailure, UndefinedInputError

logger = logging.getLogger(__name__)


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    ratios = np.abs(coeffs[1:] / coeffs[0])
    radius = max((ratios[k] ** (1.0 / (k + 1)) for k in range(n)), default=1.0)
    radius = radius if radius > 0 else 1.0
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def aberth_step(coeffs: np.ndarray, dcoeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    val = np.polyval(coeffs, z)
    vald = np.polyval(dcoeffs, z)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    inv = 1.0 / diff
    np.fill_diagonal(inv, 0.0)
    acc = inv.sum(axis=1)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(vald != 0, val / vald, val)
        denom = 1.0 - ratio * acc
        delta = np.where(denom != 0, ratio / denom, ratio)
    return delta


def residual(coeffs: Sequence[complex], roots: Sequence[complex]) -> float:
    coeffs = np.asarray(coeffs, dtype=complex)
    if len(roots) == 0:
        return 0.0
    return float(np.max(np.abs(np.polyval(coeffs, np.asarray(roots, dtype=complex)))))


def roots_numeric(coeffs: Sequence[complex], max_iter: int = ABERTH_MAX_ITER,
                  tol: float = ABERTH_TOL) -> List[complex]:
    """All complex roots of sum coeffs[i] x^(deg-i), leading coefficient first."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if len(coeffs) < 2:
        raise UndefinedInputError("roots_numeric needs a polynomial of degree at least 1")
    if coeffs[0] == 0:
        raise UndefinedInputError("leading coefficient must be nonzero")

    zero_roots = 0
    work = coeffs
    while len(work) > 1 and work[-1] == 0:
        work = work[:-1]
        zero_roots += 1
    found: List[complex] = [0j] * zero_roots
    n = len(work) - 1
    if n == 0:
        return found

    monic = work / work[0]
    dmonic = np.polyder(monic)
    z = _initial_guesses(monic)
    threshold = tol * (1.0 + np.linalg.norm(coeffs))

    converged = False
    for it in range(max_iter):
        delta = aberth_step(monic, dmonic, z)
        z = z - delta
        if np.all(np.abs(delta) <= tol * (1.0 + np.abs(z))):
            converged = True
            break
    logger.debug("Aberth iteration stopped after %d steps (converged=%s)", it + 1, converged)

    # polish with Newton steps that do not increase the residual
    for _ in range(3):
        val = np.polyval(monic, z)
        vald = np.polyval(dmonic, z)
        step = np.where(vald != 0, val / np.where(vald != 0, vald, 1.0), 0.0)
        candidate = z - step
        better = np.abs(np.polyval(monic, candidate)) < np.abs(val)
        z = np.where(better, candidate, z)

    roots = found + [complex(r) for r in z]
    res = residual(coeffs, roots)
    if res > threshold:
        if converged:
            logger.debug("Residual %.3e above threshold %.3e despite convergence", res, threshold)
        else:
            raise NumericFailure(f"Aberth iteration did not converge in {max_iter} steps", res)
    return roots
