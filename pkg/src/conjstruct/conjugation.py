"""Conjugated higher complex structures: series reversion for mu, resultant coefficients for t."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from algebra import Jet1, Localized, Registry, coeffs_in, det_jet1, jets_max_deviation, poly_to_text
from core.errors import DegenerateStructureError, InternalError, UsageError
from .partitions import factorial_product, multiplicity_partitions, size

logger = logging.getLogger(__name__)


def mubar_name(k: int) -> str:
    return f'mu{k}bar'


def tbar_name(k: int) -> str:
    return f't{k}bar'


def symbolic_registry(n: int, with_p: bool = False) -> Registry:
    """p (optional), mu2bar..munbar, t2bar..tnbar."""
    names = (['p'] if with_p else []) + [mubar_name(k) for k in range(2, n + 1)] + \
        [tbar_name(k) for k in range(2, n + 1)]
    return Registry(names)


@dataclass
class ConjPoint:
    n: int
    kmu: List[Any]
    kt: List[Any] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.n, 'conjugated': True,
                'kmu': {f'mu{k}': _encode(v) for k, v in enumerate(self.kmu, start=2)},
                'kt': {f't{k}': _encode(v) for k, v in enumerate(self.kt, start=2)}}


def _encode(value: Any) -> Any:
    if isinstance(value, Localized):
        return value.to_dict()
    if isinstance(value, Jet1):
        return {'body': _encode(value.body), 'soul': {k: _encode(v) for k, v in sorted(value.soul.items())}}
    if hasattr(value, 'ring'):
        return poly_to_text(value)
    value = complex(value)
    return {'re': value.real, 'im': value.imag}


def _is_numeric(values: Sequence[Any]) -> bool:
    return all(isinstance(v, (int, float, complex, np.number, Jet1)) for v in values)


def _scale(value: Any, ratio: Fraction) -> Any:
    if ratio.denominator == 1:
        return value * ratio.numerator
    if hasattr(value, 'ring'):
        dom = value.ring.domain
        return value * (dom.convert(ratio.numerator) / dom.convert(ratio.denominator))
    return value * (ratio.numerator / ratio.denominator)


def _localize(mubar: Sequence[Any]) -> List[Localized]:
    lead = mubar[0]
    monoms = lead.monoms() if lead else []
    if len(monoms) != 1 or sum(monoms[0]) != 1:
        raise DegenerateStructureError("mu2bar must be a single indeterminate to be inverted")
    index = monoms[0].index(1)
    return [Localized(v, None, {index}) for v in mubar]


def _series_mul(a: List[Any], b: List[Any], order: int) -> List[Any]:
    zero = a[0] * 0
    out = [zero] * order
    for i, ai in enumerate(a[:order]):
        if not ai:
            continue
        for j, bj in enumerate(b[:order - i]):
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def _compose(g: Sequence[Any], h: List[Any], order: int) -> List[Any]:
    """g(h(x)) mod x^order for g = sum_{j>=1} g_j x^j and h[0] = 0."""
    zero = h[1] * 0
    result = [zero] * order
    power = [zero] * order
    power[0] = zero + 1
    for gj in g:
        power = _series_mul(power, h, order)
        for i in range(order):
            if power[i]:
                result[i] = result[i] + gj * power[i]
    return result


def reversion(g: Sequence[Any], order: int) -> List[Any]:
    """Coefficients h_1..h_(order-1) of the compositional inverse of g mod x^order."""
    lead = g[0]
    if not lead:
        raise DegenerateStructureError("series with vanishing linear term has no inverse")
    h = [lead * 0 for _ in range(max(order, 2))]
    h[1] = lead.inverse() if hasattr(lead, 'inverse') else 1 / lead
    for j in range(2, order):
        h[j] = -_compose(g, h, j + 1)[j] / lead
    return h[1:order]


def conj_mu(mubar: Sequence[Any]) -> List[Any]:
    """_k mu for k = 2..n from mubar_2..mubar_n by reversing x -> sum mubar_k x^(k-1).

    Symbolic inputs (polynomials) return Localized values whose denominators
    are powers of mubar_2, checked against the partition formula. Complex
    inputs return complex values.
    """
    n = len(mubar) + 1
    if _is_numeric(mubar):
        values = [complex(v) for v in mubar]
        if abs(values[0]) == 0:
            raise DegenerateStructureError("mu2bar vanishes")
        return reversion(values, n)

    result = reversion(_localize(mubar), n)
    for k, (a, b) in enumerate(zip(result, conj_mu_partition(mubar)), start=2):
        if not a == b:
            logger.error("Reversion and partition sum disagree for k=%d: %s vs %s", k, a.to_text(), b.to_text())
            raise InternalError(f"conjugated mu{k} differs between reversion and partition sum")
    return result


def conj_mu_partition(mubar: Sequence[Any]) -> List[Localized]:
    """_k mu = mubar_2^-(2k-3) sum_{pi |- k-2} (-1)^|pi| (|pi|+k-2)!/((k-1)! prod pi_j!)
    mubar_2^(k-2-|pi|) prod_j mubar_(j+2)^pi_j."""
    n = len(mubar) + 1
    local = _localize(mubar)
    mu2 = local[0]
    values = []
    for k in range(2, n + 1):
        total = mu2 * 0
        for pi in multiplicity_partitions(k - 2):
            s = size(pi)
            term = mu2 ** (k - 2 - s) * ((-1) ** s)
            for j, count in enumerate(pi, start=1):
                if count:
                    term = term * local[j] ** count
            ratio = Fraction(factorial(s + k - 2), factorial(k - 1) * factorial_product(pi))
            total = total + term * ratio.numerator / (mu2 * 0 + ratio.denominator)
        values.append(total * mu2 ** (-(2 * k - 3)))
    return values


def conj_t(mubar: Sequence[Any], tbar: Sequence[Any]) -> List[Any]:
    """_k t = sum_{l>=k} tbar_l sum_{pi |- l, |pi| = k} l (k-1)!/prod pi_j! prod_j mubar_(j+1)^pi_j.

    ``mubar`` lists mubar_2..mubar_n and ``tbar`` lists tbar_2..tbar_n, taken
    to first order. Entries may be polynomials, complex numbers or jets.
    """
    n = len(mubar) + 1
    if len(tbar) != n - 1:
        raise UsageError(f"expected {n - 1} tbar values, got {len(tbar)}")
    if _is_numeric(mubar) and abs(complex(Jet1.lift(mubar[0]).body)) == 0:
        raise DegenerateStructureError("mu2bar vanishes")
    values = []
    for k in range(2, n + 1):
        total = tbar[0] * 0
        for l in range(k, n + 1):
            inner = mubar[0] * 0
            for pi in multiplicity_partitions(l, k):
                # pi_j > 0 only for j <= l - k + 1 <= n - 1, so mubar_(j+1) exists
                term = mubar[0] * 0 + 1
                for j, count in enumerate(pi, start=1):
                    if count:
                        term = term * mubar[j - 1] ** count
                inner = inner + _scale(term, Fraction(l * factorial(k - 1), factorial_product(pi)))
            total = total + tbar[l - 2] * inner
        values.append(total)
    return values


def conj_t_resultant(n: int) -> List[Any]:
    """_k t by eliminating pbar from <pbar^n - sum tbar_k pbar^(n-k), -p + sum mubar_k pbar^(k-1)>.

    The Sylvester determinant is taken modulo tbar^2 with tbar as first-order
    souls and normalized by its p^n coefficient (-1)^n.
    """
    if n < 2:
        raise UsageError("conjugated structures need n >= 2")
    reg = symbolic_registry(n, with_p=True)
    zero, one = reg.zero(), reg.one()
    f = [Jet1(one), Jet1(zero)] + [Jet1(zero, {tbar_name(k): -one}) for k in range(2, n + 1)]
    g = [Jet1(reg.gen(mubar_name(k))) for k in range(n, 1, -1)] + [Jet1(-reg.gen('p'))]
    width = 2 * n - 1
    rows = []
    for shift in range(n - 1):
        row = [Jet1(zero)] * width
        row[shift:shift + n + 1] = f
        rows.append(row)
    for shift in range(n):
        row = [Jet1(zero)] * width
        row[shift:shift + n] = g
        rows.append(row)
    R = det_jet1(rows, one)
    sign = 1 if n % 2 == 0 else -1
    pidx = reg.index['p']
    values = []
    for k in range(2, n + 1):
        total = zero
        for key, soul in R.soul.items():
            part = coeffs_in(soul, pidx).get(n - k)
            if part:
                total = total + part * reg.gen(key)
        values.append(-total * sign)
    return values


def conj_t_symbolic(n: int) -> List[Any]:
    """Partition formula for _k t in the ring of symbolic_registry(n, with_p=True)."""
    reg = symbolic_registry(n, with_p=True)
    mubar = [reg.gen(mubar_name(k)) for k in range(2, n + 1)]
    tbar = [reg.gen(tbar_name(k)) for k in range(2, n + 1)]
    return conj_t(mubar, tbar)


def conj_t_check(n: int) -> Dict[str, Any]:
    """Partition formula against resultant elimination modulo tbar^2."""
    formula = conj_t_symbolic(n)
    elimination = conj_t_resultant(n)
    mismatches = [k for k, (a, b) in enumerate(zip(formula, elimination), start=2) if a != b]
    if mismatches:
        logger.warning("Conjugated t disagree with elimination for k in %s (n=%d)", mismatches, n)
    return {'n': n, 'status': 'ok' if not mismatches else 'mismatch', 'mismatches': mismatches,
            'kt': {f't{k}': poly_to_text(v) for k, v in enumerate(formula, start=2)}}


def conj_point(mubar: Sequence[Any], tbar: Optional[Sequence[Any]] = None) -> ConjPoint:
    kmu = conj_mu(mubar)
    kt = conj_t(mubar, tbar) if tbar is not None else []
    return ConjPoint(len(mubar) + 1, kmu, kt)


def conj_involution_check(mu: Sequence[complex], t: Sequence[Any], n: int) -> Dict[str, float]:
    """Apply conjugation twice, conjugating the values in between; report the deviations.

    ``mu`` is mu_2..mu_n (complex), ``t`` is t_2..t_n as numeric jets or
    complex numbers standing for first-order values.
    """
    if len(mu) != n - 1 or len(t) != n - 1:
        raise UsageError(f"expected {n - 1} mu and t values")
    mu = [complex(v) for v in mu]
    if abs(mu[0]) == 0:
        raise DegenerateStructureError("mu2 vanishes")
    t = [v if isinstance(v, Jet1) else Jet1(0j, {'eps': complex(v)}) for v in t]
    first_mu = conj_mu([v.conjugate() for v in mu])
    first_t = conj_t([v.conjugate() for v in mu], [v.conjugate() for v in t])
    second_mu = conj_mu([v.conjugate() for v in first_mu])
    second_t = conj_t([v.conjugate() for v in first_mu], [v.conjugate() for v in first_t])
    t_dev = jets_max_deviation(second_t, t)
    return {'mu': float(max(abs(a - b) for a, b in zip(second_mu, mu))),
            't_body': t_dev['body'], 't_soul': t_dev['soul']}
