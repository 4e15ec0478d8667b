"""Standard forms of the lambda-connections and their scalar elliptic systems.

cosh-Gordon (n = 2):  d dbar phi = e^(2 phi) + |t2|^2 e^(-2 phi)
Titeica (n = 3):      2 d dbar phi = e^(2 phi) + |t3|^2 e^(-4 phi)
Toda (n):             2 d dbar phi_i = sum_j C_ij e^(2 phi_j), C the A_(n-1) Cartan matrix
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.config import SYSTEMS
from core.errors import UsageError
from .fields import MatrixField
from .gauge import curvature
from .patch import FieldPatch

logger = logging.getLogger(__name__)

BOUND_FLOOR = 1e-14
VACUUM_RADIUS = 2.0


def cartan_matrix(n: int) -> np.ndarray:
    size = n - 1
    C = 2 * np.eye(size)
    for i in range(size - 1):
        C[i, i + 1] = C[i + 1, i] = -1
    return C


def system_order(system: str, n: Optional[int] = None) -> int:
    if system not in SYSTEMS:
        raise UsageError(f"unknown system '{system}'", {'known': SYSTEMS})
    if system == 'cosh-gordon':
        return 2
    if system == 'titeica':
        return 3
    if n is None or n < 2:
        raise UsageError("the Toda system needs an order n >= 2")
    return n


def _as_fields(patch: FieldPatch, values: Any, count: int, name: str) -> List[np.ndarray]:
    if values is None:
        return [np.zeros((patch.N, patch.N)) for _ in range(count)]
    if isinstance(values, np.ndarray) and values.ndim == 2:
        values = [values]
    values = list(values)
    if len(values) != count:
        raise UsageError(f"{name} needs {count} field(s), got {len(values)}")
    return [np.real_if_close(np.broadcast_to(np.asarray(v), (patch.N, patch.N))).astype(float) for v in values]


def toda_fields(patch: FieldPatch, system: str, phis: Any, n: Optional[int] = None) -> List[np.ndarray]:
    """phi_1..phi_(n-1); Titeica repeats its single field."""
    order = system_order(system, n)
    if system == 'titeica':
        phi = _as_fields(patch, phis, 1, 'titeica')[0]
        return [phi, phi]
    return _as_fields(patch, phis, order - 1, system)


def vacuum_fields(patch: FieldPatch, system: str, n: Optional[int] = None,
                  radius: float = VACUUM_RADIUS) -> List[np.ndarray]:
    """The t = 0 solution phi_i = log(R / (R^2 - |z - c|^2)) + log(i (n - i)) / 2 about the patch center.

    Smooth wherever |z - c| < R, so its boundary trace is compatible with the equations at the corners.
    """
    order = system_order(system, n)
    count = 1 if system != 'toda' else order - 1
    r2 = np.abs(patch.z - patch.center) ** 2
    if radius ** 2 <= float(np.max(r2)):
        raise UsageError(f"vacuum radius {radius} does not clear the patch")
    base = np.log(radius / (radius ** 2 - r2))
    return [base + 0.5 * np.log(i * (order - i)) for i in range(1, count + 1)]


def toda_diagonal(patch: FieldPatch, phis: Sequence[np.ndarray]) -> List[np.ndarray]:
    """a_i = sum_(k<i) (k/n) d phi_k - sum_(k>=i) ((n-k)/n) d phi_k, i = 1..n."""
    n = len(phis) + 1
    dphi = [patch.d(phi) for phi in phis]
    diagonal = []
    for i in range(1, n + 1):
        a = np.zeros((patch.N, patch.N), dtype=complex)
        for k in range(1, n):
            weight = k / n if k < i else -(n - k) / n
            a = a + weight * dphi[k - 1]
        diagonal.append(a)
    return diagonal


@dataclass(eq=False)
class StandardForm:
    Phi1: MatrixField
    A1: MatrixField
    t: np.ndarray

    def connection(self, lam: complex = 1.0) -> Tuple[MatrixField, MatrixField]:
        """(lambda Phi1 + A1, -A1^* + lambda^-1 Phi1^*) with * the conjugate transpose."""
        part1 = self.Phi1.scale(lam) + self.A1
        part2 = -self.A1.dagger() + self.Phi1.dagger().scale(1.0 / lam)
        return part1, part2


def standard_form(patch: FieldPatch, system: str, phis: Any, t: Any = None,
                  n: Optional[int] = None) -> StandardForm:
    """Phi1 carries e^(phi_k) on the subdiagonal; A1 is the Toda diagonal plus
    t_n e^(-sum phi) in the top-right corner."""
    fields = toda_fields(patch, system, phis, n)
    order = len(fields) + 1
    tn = np.zeros((patch.N, patch.N), dtype=complex) if t is None else \
        np.broadcast_to(np.asarray(t, dtype=complex), (patch.N, patch.N))
    phi_data = patch.zeros(order, order)
    for k, phi in enumerate(fields, start=1):
        phi_data[:, :, k, k - 1] = np.exp(phi)
    a_data = patch.zeros(order, order)
    for i, a in enumerate(toda_diagonal(patch, fields)):
        a_data[:, :, i, i] = a
    a_data[:, :, 0, order - 1] += tn * np.exp(-sum(fields))
    return StandardForm(MatrixField(phi_data, ('strict_lower',)), MatrixField(a_data, ('traceless',)), tn)


def scalar_residuals(patch: FieldPatch, system: str, phis: Any, t: Any = None,
                     n: Optional[int] = None) -> List[np.ndarray]:
    fields = toda_fields(patch, system, phis, n)
    t2 = 0.0 if t is None else np.abs(np.asarray(t)) ** 2
    if system == 'cosh-gordon':
        phi = fields[0]
        return [patch.dd_bar(phi) - np.exp(2 * phi) - t2 * np.exp(-2 * phi)]
    if system == 'titeica':
        phi = fields[0]
        return [2 * patch.dd_bar(phi) - np.exp(2 * phi) - t2 * np.exp(-4 * phi)]
    C = cartan_matrix(len(fields) + 1)
    exps = [np.exp(2 * phi) for phi in fields]
    return [2 * patch.dd_bar(phi) - sum(C[i, j] * exps[j] for j in range(len(fields)))
            for i, phi in enumerate(fields)]


@dataclass(eq=False)
class ResidualReport:
    system: str
    n: int
    scalar: List[np.ndarray]
    scalar_max: float
    dbar_t_max: float
    flatness_max: float
    bound_constant: float
    flatness: MatrixField

    def to_dict(self) -> Dict[str, Any]:
        return {'system': self.system, 'n': self.n, 'scalar_max': self.scalar_max,
                'dbar_t_max': self.dbar_t_max, 'flatness_max': self.flatness_max,
                'bound_constant': self.bound_constant}


def _interior(patch: FieldPatch) -> np.ndarray:
    return ~patch.boundary_mask


def pde_residual(patch: FieldPatch, system: str, phis: Any, t: Any = None,
                 n: Optional[int] = None, lam: complex = 1.0) -> ResidualReport:
    """Scalar residual(s) together with the flatness of the assembled standard form."""
    form = standard_form(patch, system, phis, t, n)
    order = form.A1.n
    scalar = scalar_residuals(patch, system, phis, t, n)
    interior = _interior(patch)
    scalar_max = max(float(np.max(np.abs(r)[interior])) for r in scalar)
    dbar_t = float(np.max(np.abs(patch.dbar(form.t))[interior])) if t is not None else 0.0
    F = curvature(patch, *form.connection(lam)).F
    flat = F.max_abs(interior)
    constant = flat / max(scalar_max + dbar_t, BOUND_FLOOR)
    logger.debug("%s residual: scalar %.3e, flatness %.3e", system, scalar_max, flat)
    return ResidualReport(system, order, scalar, scalar_max, dbar_t, flat, constant, F)


def toda_cartan_check(patch: FieldPatch, phis: Sequence[np.ndarray]) -> Dict[str, Any]:
    """F_(i-1,i-1) - F_(i,i) of the Toda standard form against
    2 d dbar phi_i - sum_j C_ij e^(2 phi_j)."""
    phis = [phis] if isinstance(phis, np.ndarray) and phis.ndim == 2 else list(phis)
    fields = _as_fields(patch, phis, len(phis), 'toda')
    n = len(fields) + 1
    report = pde_residual(patch, 'toda', fields, None, n)
    interior = _interior(patch)
    worst = 0.0
    for i in range(1, n):
        diff = report.flatness.entry(i - 1, i - 1) - report.flatness.entry(i, i)
        worst = max(worst, float(np.max(np.abs(diff - report.scalar[i - 1])[interior])))
    return {'n': n, 'cartan': cartan_matrix(n).astype(int).tolist(),
            'diagonal_defect': worst, 'scalar_max': report.scalar_max}


def reality_defect(patch: FieldPatch, system: str, phis: Any, t: Any = None,
                   n: Optional[int] = None, lam: complex = 0.7 + 0.4j) -> float:
    """max |-A(-1/conj(lambda))^* - A(lambda)| over both form components."""
    form = standard_form(patch, system, phis, t, n)
    one, two = form.connection(lam)
    mirror = -1.0 / np.conj(lam)
    m_one, m_two = form.connection(mirror)
    return max((-m_two.dagger() - one).max_abs(), (-m_one.dagger() - two).max_abs())
