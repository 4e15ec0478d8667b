"""The GL_2(R) action on cotangent big-cell points modulo t^2.

A numeric point is read to first order in one nilpotent parameter eps:
t_k = eps * pt.t_k, mu_1 = eps * pt.mu_1 and mu_k = pt.mu_k for k >= 2.
Quotient elements are coefficient lists on (1, x, ..., x^(n-1)) with
Jet1 entries; x^n is rewritten as sum t_k x^(n-k).
"""
import logging
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
import sympy

from algebra import Jet1, det_jet_numeric, principal_root, sylvester_matrix
from core.errors import ChartBoundaryError, NumericFailure
from hilbert import BigCellPoint, reduced_mu1
from .group import GL2Elem

logger = logging.getLogger(__name__)

EPS = 'eps'
CERT_TOL = 1e-8

Element = List[Jet1]


def first_order(value: complex) -> Jet1:
    return Jet1(0j, {EPS: complex(value)})


def jet_point(pt: BigCellPoint) -> Tuple[List[Jet1], List[Jet1]]:
    """(t_1..t_n, mu_1..mu_n) as jets under the first-order reading."""
    num = pt.numeric()
    t = [first_order(v) for v in num['t']]
    mu = [first_order(num['mu'][0])] + [Jet1(complex(v)) for v in num['mu'][1:]]
    return t, mu


def soul(value: Jet1) -> complex:
    return complex(value.part(EPS))


def _zero(n: int) -> Element:
    return [Jet1(0j) for _ in range(n)]


def q_mul(u: Element, v: Element, t: Sequence[Jet1]) -> Element:
    n = len(t)
    full = [Jet1(0j) for _ in range(2 * n - 1)]
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if vj:
                full[i + j] = full[i + j] + ui * vj
    for d in range(2 * n - 2, n - 1, -1):
        c = full[d]
        if not c:
            continue
        full[d] = Jet1(0j)
        for k in range(1, n + 1):
            full[d - k] = full[d - k] + c * t[k - 1]
    return full[:n]


def q_pow(u: Element, k: int, t: Sequence[Jet1]) -> Element:
    result = _zero(len(t))
    result[0] = Jet1(1 + 0j)
    for _ in range(k):
        result = q_mul(result, u, t)
    return result


def q_lin(pairs: Sequence[Tuple[Any, Element]], n: int) -> Element:
    out = _zero(n)
    for scale, elem in pairs:
        out = [o + e * scale for o, e in zip(out, elem)]
    return out


def q_poly(coeffs: Sequence[Jet1], base: Element, t: Sequence[Jet1]) -> Element:
    """sum_k coeffs[k] * base^k."""
    n = len(t)
    out = _zero(n)
    power = q_pow(base, 0, t)
    for c in coeffs:
        out = q_lin([(1, out), (c, power)], n)
        power = q_mul(power, base, t)
    return out


def x_element(n: int) -> Element:
    e = _zero(n)
    if n > 1:
        e[1] = Jet1(1 + 0j)
    return e


def char_coeffs(elem: Element, t: Sequence[Jet1]) -> List[Jet1]:
    """s_1..s_n with elem^n = sum s_k elem^(n-k) in the quotient.

    R(lam) = Res_x(x^n - sum t_k x^(n-k), lam - elem(x)) is monic of degree n;
    it is sampled on a circle and interpolated by a discrete Fourier sum.
    """
    n = len(t)
    f = [Jet1(1 + 0j)] + [-tk for tk in t]
    radius = 1.0 + abs(complex(elem[0].body))
    samples = radius * np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
    values = []
    for lam in samples:
        g = [-c for c in reversed(elem[1:])] + [Jet1(complex(lam)) - elem[0]]
        values.append(det_jet_numeric(sylvester_matrix(f, g, Jet1(0j))))
    coeffs = []
    for k in range(n + 1):
        total = Jet1(0j)
        for lam, value in zip(samples, values):
            total = total + value * (complex(lam) ** (-k) / (n + 1))
        coeffs.append(total)
    lead = coeffs[n]
    if abs(complex(lead.body) - 1) > CERT_TOL:
        raise NumericFailure("characteristic resultant is not monic", abs(complex(lead.body) - 1))
    return [-coeffs[n - k] for k in range(1, n + 1)]


def _equation(X: Element, t: Sequence[Jet1], tbar: Sequence[Jet1]) -> Element:
    n = len(t)
    lhs = q_pow(X, n, t)
    for k in range(1, n + 1):
        lhs = q_lin([(1, lhs), (-tbar[k - 1], q_pow(X, n - k, t))], n)
    return lhs


def conj_x(t: Sequence[Jet1]) -> Tuple[Element, Dict[str, float]]:
    """xbar = m_1 + m_2 x + ... + m_n x^(n-1) in the quotient, mod t^2.

    m_2 is the principal n-th root of tbar_n / t_n; each m_(j+2) first
    appears linearly in the x^j coefficient and m_1 (first order) in the
    x^(n-1) coefficient. The result is certified by the characteristic
    coefficients of xbar reproducing conj(t_k).
    """
    n = len(t)
    tbar = [tk.conjugate() for tk in t]
    tn = soul(t[n - 1])
    if tn == 0:
        raise ChartBoundaryError("t_n = 0: the conjugate coordinate is not defined on this chart")
    X = _zero(n)
    if n > 1:
        X[1] = Jet1(principal_root(tn.conjugate() / tn, n))
    for j in range(1, n):
        target = j + 1 if j < n - 1 else 0
        trial = lambda v: X[:target] + [v] + X[target + 1:]
        if target:
            unit, origin = Jet1(1 + 0j), Jet1(0j)
        else:
            unit, origin = first_order(1), Jet1(0j)
        e0 = soul(_equation(trial(origin), t, tbar)[j])
        e1 = soul(_equation(trial(unit), t, tbar)[j])
        slope = e1 - e0
        if slope == 0:
            raise NumericFailure(f"coefficient m_{target + 1} does not appear linearly", abs(e0))
        X[target] = origin + unit * (-e0 / slope)
    if n == 1:
        X[0] = first_order(tn.conjugate())
    residual = max(abs(soul(e)) for e in _equation(X, t, tbar))
    recovered = char_coeffs(X, t)
    cert = max(abs(soul(a) - soul(b)) for a, b in zip(recovered, tbar))
    scale = 1.0 + max(abs(soul(tk)) for tk in t)
    if cert > CERT_TOL * scale:
        raise NumericFailure("conjugate expansion does not reproduce tbar", cert, {'residual': residual})
    return X, {'residual': residual, 'certificate': cert}


def mbar_coeffs(pt: BigCellPoint) -> List[complex]:
    """m_2..m_n (bodies) of xbar = sum m_i x^(i-1)."""
    t, _ = jet_point(pt)
    X, _ = conj_x(t)
    return [complex(c.body) for c in X[1:]]


def act(g: GL2Elem, pt: BigCellPoint) -> BigCellPoint:
    """Image of a numeric big-cell point under (x, ybar) -> (a x + conj(b) ybar, b x + conj(a) ybar).

    t' comes from the characteristic resultant of x' and mu' from the
    triangular system y' = sum mu'_k x'^(k-1) with y' = conj(b) xbar + a y.
    """
    n = pt.n
    t, mu = jet_point(pt)
    X, _ = conj_x(t)
    x = x_element(n)
    y = q_poly(mu, x, t)
    ybar = q_poly([m.conjugate() for m in mu], X, t)
    bbar = g.b.conjugate()
    x_new = q_lin([(g.a, x), (bbar, ybar)], n)
    y_new = q_lin([(bbar, X), (g.a, y)], n)

    t_new = char_coeffs(x_new, t)
    scale = 1.0 + max(abs(soul(tk)) for tk in t)
    if abs(soul(t_new[n - 1])) < CERT_TOL * scale:
        raise ChartBoundaryError("t'_n vanishes: the image leaves the big cell chart",
                                 {'t_n': repr(soul(t_new[n - 1]))})

    powers = [q_pow(x_new, k, t) for k in range(n)]
    mu_new = [0j] * n
    for j in range(1, n):
        rest = complex(y_new[j].body) - sum(mu_new[k] * complex(powers[k][j].body) for k in range(1, j))
        pivot = complex(powers[j][j].body)
        if pivot == 0:
            raise ChartBoundaryError("x' has no linear term; the image is off the chart")
        mu_new[j] = rest / pivot
    mu_new[0] = soul(y_new[0]) - sum(mu_new[k] * soul(powers[k][0]) for k in range(1, n))

    t_out = [soul(v) for v in t_new]
    if pt.reduced:
        derived = complex(reduced_mu1(n, t_out, mu_new))
        defect = max(abs(t_out[0]), abs(derived - mu_new[0]))
        if defect > CERT_TOL * scale:
            logger.warning("Image of a reduced point is not reduced: defect %.3e", defect)
    return BigCellPoint(n, [sympy.sympify(v) for v in t_out], [sympy.sympify(v) for v in mu_new], pt.reduced)


def closed_form_n2(g: GL2Elem, pt: BigCellPoint) -> Dict[str, complex]:
    """t_2' = (a + conj(b) conj(mu_2) m_2)^2 t_2 and mu_2' = (a mu_2 + conj(b) m_2) / (a + conj(b) conj(mu_2) m_2)."""
    num = pt.numeric()
    t2, mu2 = num['t'][1], num['mu'][1]
    m2 = principal_root(t2.conjugate() / t2, 2)
    u = g.a + g.b.conjugate() * mu2.conjugate() * m2
    return {'t2': u ** 2 * t2, 'mu2': (g.a * mu2 + g.b.conjugate() * m2) / u}


def leading_factor(g: GL2Elem, pt: BigCellPoint) -> complex:
    """u_2 = a + conj(b) conj(mu_2) m_2, so that t_n' = u_2^n t_n."""
    num = pt.numeric()
    tn = num['t'][pt.n - 1]
    m2 = principal_root(tn.conjugate() / tn, pt.n)
    return g.a + g.b.conjugate() * num['mu'][1].conjugate() * m2


def point_distance(p: BigCellPoint, q: BigCellPoint) -> float:
    a, b = p.numeric(), q.numeric()
    return max(abs(u - v) for u, v in zip(a['t'] + a['mu'], b['t'] + b['mu']))
