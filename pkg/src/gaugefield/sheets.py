"""Spectral sheets p^n = P(p), pbar = Q(p) over a patch, Liouville closedness, and the
Cauchy-transform step of the local trivialization."""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from algebra import roots_numeric
from core.config import JET_EPSILONS, SHEET_SEPARATION
from core.errors import SupportError, UsageError
from .patch import FieldPatch

logger = logging.getLogger(__name__)

BUMP_POWER = 8
SUPPORT_TOL = 1e-12
# closedness residuals at or below this multiple of eps are roundoff
ROUNDOFF_FLOOR = 1e-10
SLOPE_TOL = 0.1


def _broadcast(patch: FieldPatch, values: Sequence[Any], count: int, name: str) -> List[np.ndarray]:
    values = list(values)
    if len(values) != count:
        raise UsageError(f"expected {count} {name} field(s), got {len(values)}")
    return [np.broadcast_to(np.asarray(v, dtype=complex), (patch.N, patch.N)) for v in values]


def _track_roots(coefficients: List[np.ndarray], n: int) -> np.ndarray:
    """Roots per node, labelled continuously along a serpentine path through the grid."""
    N = coefficients[0].shape[0]
    roots = np.empty((N, N, n), dtype=complex)
    previous = None
    for iy in range(N):
        columns = range(N) if iy % 2 == 0 else range(N - 1, -1, -1)
        for ix in columns:
            current = np.asarray(roots_numeric([1.0] + [c[iy, ix] for c in coefficients]), dtype=complex)
            if previous is not None:
                rows, cols = linear_sum_assignment(np.abs(current[:, None] - previous[None, :]))
                tracked = np.empty(n, dtype=complex)
                tracked[cols] = current[rows]
                current = tracked
            roots[iy, ix] = current
            previous = current
    return roots


def _separation(roots: np.ndarray) -> np.ndarray:
    n = roots.shape[-1]
    if n < 2:
        return np.full(roots.shape[:2], np.inf)
    gaps = np.abs(roots[..., :, None] - roots[..., None, :])
    gaps[..., np.arange(n), np.arange(n)] = np.inf
    return gaps.min(axis=(-2, -1))


@dataclass(eq=False)
class SheetData:
    n: int
    eps: float
    roots: np.ndarray
    mask: np.ndarray
    coefficients: Dict[int, np.ndarray]
    residual: float
    d_alpha_max: float
    collapsed: bool = False

    @property
    def masked_count(self) -> int:
        return int(self.mask.sum())

    def to_dict(self) -> Dict[str, Any]:
        worst = {m: float(np.max(np.abs(c)[~self.mask], initial=0.0)) for m, c in self.coefficients.items()}
        return {'n': self.n, 'eps': self.eps, 'residual': self.residual, 'd_alpha_max': self.d_alpha_max,
                'masked_nodes': self.masked_count, 'collapsed': self.collapsed,
                'bracket_coefficients': worst}

    def rows(self, patch: FieldPatch) -> List[List[Any]]:
        """ix, iy, x, y, sheet, Re p, Im p; masked nodes carry None."""
        X, Y = patch.coordinates
        out = []
        for iy in range(patch.N):
            for ix in range(patch.N):
                for j in range(self.n):
                    p = self.roots[iy, ix, j]
                    value = (None, None) if self.mask[iy, ix] else (float(p.real), float(p.imag))
                    out.append([ix, iy, float(X[iy, ix]), float(Y[iy, ix]), j, *value])
        return out


def barycenter_mu1(n: int, mu: Sequence[np.ndarray], tt: Sequence[np.ndarray]) -> np.ndarray:
    """mu_1 = -sum_(k=2)^(n-1) (k/n) t_k mu_(k+1)."""
    total = np.zeros_like(mu[0])
    for k in range(2, n):
        total = total - (k / n) * tt[k - 2] * mu[k - 1]
    return total


def spectral_sheets(patch: FieldPatch, mu: Sequence[Any], t: Sequence[Any], eps: float,
                    mu1: Any = None, separation: float = SHEET_SEPARATION) -> SheetData:
    """Sheets of p^n = sum eps t_k p^(n-k) with pbar = Q(p) = mu_1 + sum mu_k p^(k-1).

    On each sheet the restricted Liouville form p dz + pbar dzbar has
    d alpha = (dbar p - d Q(p)) dzbar ^ dz. Multiplied by the sheet derivative
    of p^n - P these values interpolate the polynomial {p^n - P, -pbar + Q}
    modulo the ideal; its coefficients are returned, and their maximum is the
    closedness residual. Nodes where two sheets come closer than ``separation``
    are masked.
    """
    n = len(list(t)) + 1
    mu = _broadcast(patch, mu, n - 1, 'mu')
    tt = [eps * v for v in _broadcast(patch, t, n - 1, 't')]
    shape = (patch.N, patch.N)
    if max(float(np.max(np.abs(v))) for v in tt) == 0.0:
        zero = {m: np.zeros(shape, dtype=complex) for m in range(n)}
        return SheetData(n, eps, np.zeros(shape + (n,), dtype=complex), np.zeros(shape, dtype=bool),
                         zero, 0.0, 0.0, collapsed=True)
    mu1 = barycenter_mu1(n, mu, tt) if mu1 is None else np.broadcast_to(np.asarray(mu1, dtype=complex), shape)

    roots = _track_roots([np.zeros(shape, dtype=complex)] + [-v for v in tt], n)
    mask = _separation(roots) < separation
    if mask.any():
        logger.warning("%d nodes masked near branch points", int(mask.sum()))

    values = np.zeros(shape + (n,), dtype=complex)
    d_alpha = 0.0
    for j in range(n):
        p = roots[..., j]
        Qp = mu1 + sum(mu[k - 2] * p ** (k - 1) for k in range(2, n + 1))
        rho = patch.dbar(p) - patch.d(Qp)
        fp = n * p ** (n - 1) - sum((n - k) * tt[k - 2] * p ** (n - k - 1) for k in range(2, n))
        values[..., j] = rho * fp
        d_alpha = max(d_alpha, float(np.max(np.abs(rho)[~mask], initial=0.0)))

    V = roots[..., :, None] ** np.arange(n)
    V[mask] = np.eye(n)
    values[mask] = 0.0
    solved = np.linalg.solve(V, values[..., None])[..., 0]
    coefficients = {m: solved[..., m] for m in range(n)}
    residual = float(np.max(np.abs(solved)[~mask], initial=0.0))
    logger.debug("Spectral sheets n=%d eps=%.1e: residual %.3e", n, eps, residual)
    return SheetData(n, eps, roots, mask, coefficients, residual, d_alpha)


def liouville_slope(patch: FieldPatch, mu: Sequence[Any], t: Sequence[Any],
                    epsilons: Sequence[float] = JET_EPSILONS, mu1: Any = None) -> Dict[str, Any]:
    """Order in eps of the closedness residual from two jet scalings.

    order is 'exact' when both residuals sit at roundoff, 'linear' or
    'quadratic' when the fitted slope is within SLOPE_TOL of 1 or 2, and
    'unresolved' otherwise. No slope is fitted to roundoff.
    """
    epsilons = list(epsilons[:2])
    residuals = [spectral_sheets(patch, mu, t, e, mu1).residual for e in epsilons]
    report = {'epsilons': epsilons, 'residuals': residuals, 'slope': None, 'order': 'unresolved'}
    if all(r <= ROUNDOFF_FLOOR * e for r, e in zip(residuals, epsilons)):
        logger.debug("Closedness residuals %s are at roundoff", residuals)
        report['order'] = 'exact'
        return report
    if min(residuals) <= 0:
        return report
    slope = float(np.log(residuals[0] / residuals[1]) / np.log(epsilons[0] / epsilons[1]))
    report['slope'] = slope
    for name, expected in (('linear', 1.0), ('quadratic', 2.0)):
        if abs(slope - expected) <= SLOPE_TOL:
            report['order'] = name
    return report


def condition_fields_n2(patch: FieldPatch, s: Any) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """(mu_2, t_2) solving condition (C) for n = 2 on a periodic patch.

    With t_2 = s^2 the condition reads d(mu_2 s) = dbar s, so
    mu_2 = d^-1(dbar s) / s for a nonvanishing periodic s.
    """
    s = np.broadcast_to(np.asarray(s, dtype=complex), (patch.N, patch.N))
    if np.min(np.abs(s)) == 0:
        raise UsageError("s must not vanish on the patch")
    mu2 = patch.solve_d(patch.dbar(s)) / s
    return [mu2], [s * s]


def bump(patch: FieldPatch, center: complex, radius: float, power: int = BUMP_POWER) -> np.ndarray:
    """(1 - |z - c|^2 / R^2)^power inside the disk, zero outside."""
    r2 = np.abs(patch.z - center) ** 2 / radius ** 2
    return np.where(r2 < 1, np.clip(1 - r2, 0, None) ** power, 0.0)


def bump_cauchy_transform(patch: FieldPatch, center: complex, radius: float,
                          power: int = BUMP_POWER) -> np.ndarray:
    """Exact T of the radial bump: M(|w|^2) / w with w = z - c and dM/ds = bump."""
    w = patch.z - center
    s = np.minimum(np.abs(w) ** 2 / radius ** 2, 1.0)
    M = radius ** 2 / (power + 1) * (1 - (1 - s) ** (power + 1))
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(np.abs(w) > 0, M / np.where(np.abs(w) > 0, w, 1.0), 0.0)


@dataclass(eq=False)
class TrivializeResult:
    v: np.ndarray
    residual: float
    mass: complex
    post_flow: np.ndarray = field(repr=False, default=None)

    def to_dict(self) -> Dict[str, Any]:
        return {'residual': self.residual, 'mass': {'re': self.mass.real, 'im': self.mass.imag},
                'post_flow_max': float(np.max(np.abs(self.post_flow))),
                'v_max_abs': float(np.max(np.abs(self.v)))}


def trivialize_step(patch: FieldPatch, mu_next: Any, center: Optional[complex] = None,
                    radius: Optional[float] = None) -> TrivializeResult:
    """v with dbar v = -mu_next, i.e. v = -T mu_next for the Cauchy transform T.

    mu_next must vanish outside the disk. Its mass is carried by a radial bump
    whose Cauchy transform is known in closed form; the mass-free remainder is
    inverted spectrally and normalized to mean zero outside the disk.
    """
    if patch.geometry != 'periodic':
        raise UsageError("the Cauchy transform step runs on a periodic patch")
    center = patch.center if center is None else complex(center)
    radius = 0.4 * patch.L if radius is None else float(radius)
    mu = np.broadcast_to(np.asarray(mu_next, dtype=complex), (patch.N, patch.N))
    outside = np.abs(patch.z - center) >= radius
    leak = float(np.max(np.abs(mu[outside]), initial=0.0))
    if leak > SUPPORT_TOL * (1.0 + float(np.max(np.abs(mu)))):
        raise SupportError("mu is not supported in the disk", {'max_outside': leak, 'radius': radius})

    reference = bump(patch, center, radius)
    mass = complex(np.mean(mu))
    c = mass / float(np.mean(reference))
    remainder = mu - c * reference
    v0 = patch.solve_dbar(remainder)
    v0 = v0 - np.mean(v0[outside])
    v = -(v0 + c * bump_cauchy_transform(patch, center, radius))
    post_flow = remainder - patch.dbar(v0)
    residual = float(np.max(np.abs(post_flow)))
    logger.debug("Cauchy transform step: mass %.3e, residual %.3e", abs(mass), residual)
    return TrivializeResult(v, residual, mass, post_flow)
