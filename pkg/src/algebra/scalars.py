"""Gaussian-rational scalars: the exact coefficient field for every symbolic formula."""
import random
from fractions import Fraction
from typing import Any, Dict, Union

import sympy
from sympy.polys.domains import QQ, QQ_I

from core.errors import UsageError

Scalar = Any


def gauss(re: Union[int, str, Fraction] = 0, im: Union[int, str, Fraction] = 0):
    return QQ_I(QQ.convert(sympy.Rational(re)), QQ.convert(sympy.Rational(im)))


def to_scalar(value: Any):
    """Convert ints, Fractions, sympy numbers or complex-free strings into QQ_I."""
    if isinstance(value, QQ_I.dtype):
        return value
    if isinstance(value, Fraction):
        return gauss(sympy.Rational(value.numerator, value.denominator))
    if isinstance(value, dict):
        return scalar_from_json(value)
    if isinstance(value, float):
        raise UsageError(f"floating point value {value!r} cannot enter an exact computation")
    try:
        return QQ_I.from_sympy(sympy.sympify(value))
    except (sympy.SympifyError, Exception) as e:
        raise UsageError(f"not an exact Gaussian rational: {value!r} ({e})")


def conjugate(value):
    """Complex conjugate; QQ_I elements have no conjugate method of their own."""
    if isinstance(value, QQ_I.dtype):
        return QQ_I(value.x, -value.y)
    return value.conjugate()


def rational_text(q) -> str:
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def scalar_to_json(value) -> Dict[str, str]:
    value = to_scalar(value)
    return {'re': rational_text(value.x), 'im': rational_text(value.y)}


def scalar_from_json(data: Dict[str, str]):
    try:
        return gauss(sympy.Rational(data.get('re', '0')), sympy.Rational(data.get('im', '0')))
    except (TypeError, ValueError, sympy.SympifyError) as e:
        raise UsageError(f"malformed scalar {data!r}: {e}")


def scalar_text(value) -> str:
    re, im = value.x, value.y
    if not im:
        return rational_text(re)
    if not re:
        return f"{rational_text(im)}*I"
    return f"({rational_text(re)} + {rational_text(im)}*I)"


def to_sympy(value) -> sympy.Expr:
    return QQ_I.to_sympy(value)


def to_complex(value) -> complex:
    return complex(float(Fraction(int(value.x.numerator), int(value.x.denominator))),
                   float(Fraction(int(value.y.numerator), int(value.y.denominator))))


def random_scalar(rng: random.Random, height: int = 9, gaussian: bool = True):
    """Random exact sample point coordinate with small numerator and denominator."""
    re = sympy.Rational(rng.randint(-height, height), rng.randint(1, height))
    im = sympy.Rational(rng.randint(-height, height), rng.randint(1, height)) if gaussian else 0
    return gauss(re, im)


def random_nonzero_scalar(rng: random.Random, height: int = 9, gaussian: bool = True):
    while True:
        value = random_scalar(rng, height, gaussian)
        if value:
            return value
