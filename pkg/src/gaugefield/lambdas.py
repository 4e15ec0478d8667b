"""Leading behaviour of the parabolic coordinates of the lambda-family at a single point."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.linear_model import LinearRegression

from core.config import LAMBDA_RADII
from core.errors import LeadingTermMismatch, UsageError
from .gauge import constant_parabolic_gauge

logger = logging.getLogger(__name__)

EXPONENT_TOL = 0.1
SAMPLE_ANGLE = 0.3
COEFFICIENT_FLOOR = 1e-12
# the corrections to both limits are O(1/lambda)
LIMIT_RADIUS = 1e8


def _dagger(M: np.ndarray) -> np.ndarray:
    return np.conj(M.T)


def higgs_part(Phi1: Any, mu: Sequence[complex]) -> np.ndarray:
    """Phi2 = sum_k mu_k Phi1^(k-1) for mu_2..mu_n."""
    Phi1 = np.asarray(Phi1, dtype=complex)
    Phi2 = np.zeros_like(Phi1)
    for k, value in enumerate(mu, start=2):
        Phi2 = Phi2 + value * np.linalg.matrix_power(Phi1, k - 1)
    return Phi2


def lambda_connection(Phi1: Any, Phi2: Any, A1: Any, lam: complex) -> Tuple[np.ndarray, np.ndarray]:
    """(lambda Phi1 + A1 + lambda^-1 Phi2^*, lambda Phi2 - A1^* + lambda^-1 Phi1^*)."""
    Phi1, Phi2, A1 = (np.asarray(M, dtype=complex) for M in (Phi1, Phi2, A1))
    part1 = lam * Phi1 + A1 + _dagger(Phi2) / lam
    part2 = lam * Phi2 - _dagger(A1) + _dagger(Phi1) / lam
    return part1, part2


def parabolic_coordinates(Phi1: Any, A1: Any, mu: Sequence[complex], lam: complex) -> Tuple[Dict[int, complex], Dict[int, complex]]:
    one, two = lambda_connection(Phi1, higgs_part(Phi1, mu), A1, lam)
    _, that, muhat = constant_parabolic_gauge(one, two)
    return that, muhat


def muhat2_closed_form(Phi1: Any, A1: Any, mu2: complex, lam: complex) -> complex:
    """(-conj(a1) + lambda mu2 b1) / (lambda b1 + a2) for n = 2."""
    Phi1, A1 = np.asarray(Phi1, dtype=complex), np.asarray(A1, dtype=complex)
    b1, a1, a2 = Phi1[1, 0], A1[0, 1], A1[1, 0]
    return complex((-np.conj(a1) + lam * mu2 * b1) / (lam * b1 + a2))


@dataclass
class LeadingFit:
    name: str
    k: int
    expected_exponent: int
    fitted_exponent: Optional[float]
    expected_coefficient: complex
    coefficient: Optional[complex]

    @property
    def skipped(self) -> bool:
        return self.fitted_exponent is None

    def to_dict(self) -> Dict[str, Any]:
        def cplx(z):
            return None if z is None else {'re': z.real, 'im': z.imag}
        return {'name': self.name, 'k': self.k, 'expected_exponent': self.expected_exponent,
                'fitted_exponent': self.fitted_exponent, 'expected_coefficient': cplx(self.expected_coefficient),
                'coefficient': cplx(self.coefficient)}


def _fit(name: str, k: int, exponent: int, expected: complex, radii: Sequence[float],
         values: List[complex]) -> LeadingFit:
    if abs(expected) < COEFFICIENT_FLOOR:
        return LeadingFit(name, k, exponent, None, expected, None)
    logs = np.log(np.abs(np.asarray(values)))
    model = LinearRegression().fit(np.log(np.asarray(radii)).reshape(-1, 1), logs)
    slope = float(model.coef_[0])
    lam = radii[-1] * np.exp(1j * SAMPLE_ANGLE)
    return LeadingFit(name, k, exponent, slope, expected, complex(values[-1] / lam ** exponent))


def lambda_leading(Phi1: Any, A1: Any, mu: Sequence[complex],
                   radii: Sequence[float] = LAMBDA_RADII, strict: bool = True) -> Dict[str, Any]:
    """Fit the growth of that_k(lambda) and muhat_k(lambda) on circles of large radius.

    Expected: that_k ~ lambda^(k-1) tr(Phi1^(k-1) A1) and muhat_k ~ lambda^(2-k) mu_k.
    Coordinates whose expected coefficient vanishes are skipped.
    """
    Phi1, A1 = np.asarray(Phi1, dtype=complex), np.asarray(A1, dtype=complex)
    n = Phi1.shape[0]
    if len(mu) != n - 1:
        raise UsageError(f"expected {n - 1} Beltrami coefficients mu_2..mu_{n}, got {len(mu)}")
    samples = [parabolic_coordinates(Phi1, A1, mu, r * np.exp(1j * SAMPLE_ANGLE)) for r in radii]
    fits = []
    for k in range(2, n + 1):
        expected = complex(np.trace(np.linalg.matrix_power(Phi1, k - 1) @ A1))
        fits.append(_fit('that', k, k - 1, expected, radii, [s[0][k] for s in samples]))
        fits.append(_fit('muhat', k, 2 - k, complex(mu[k - 2]), radii, [s[1][k] for s in samples]))
    bad = [f for f in fits if not f.skipped and abs(f.fitted_exponent - f.expected_exponent) >= EXPONENT_TOL]
    if bad and strict:
        raise LeadingTermMismatch("lambda-family leading exponents do not match",
                                  details={'fits': [f.to_dict() for f in bad]})
    profile = [{'radius': r,
                'that': {k: abs(s[0][k]) for k in range(2, n + 1)},
                'muhat': {k: abs(s[1][k]) for k in range(2, n + 1)}} for r, s in zip(radii, samples)]
    return {'n': n, 'fits': [f.to_dict() for f in fits], 'profile': profile,
            'status': 'fail' if bad else 'pass'}


def lambda_limits(Phi1: Any, A1: Any, mu: Sequence[complex], radius: float = LIMIT_RADIUS) -> Dict[str, complex]:
    """muhat_2 at lambda = radius and lambda = 1/radius."""
    far = parabolic_coordinates(Phi1, A1, mu, radius * np.exp(1j * SAMPLE_ANGLE))[1][2]
    near = parabolic_coordinates(Phi1, A1, mu, np.exp(1j * SAMPLE_ANGLE) / radius)[1][2]
    return {'infinity': far, 'zero': near}
