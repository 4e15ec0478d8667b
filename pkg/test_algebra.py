import pytest

from algebra import (Jet1, Localized, Registry, det_fraction_free, det_jet1, det_jet_numeric, gauss,
                     identity_at_samples, jets_max_deviation, nullspace_exact, poly_from_json, poly_to_json,
                     poly_vars, principal_root, random_poly, rank_exact, resultant, resultant_coeffs,
                     roots_numeric, scalar_text, scalar_to_json, solve_exact, to_scalar)
from core.errors import DegenerateStructureError, UndefinedInputError, UsageError


def test_scalar_json_and_text():
    assert scalar_to_json(gauss(1, -2)) == {'re': '1', 'im': '-2'}
    assert scalar_text(gauss(0, 3)) == '3*I'
    assert scalar_text(gauss('1/2')) == '1/2'


def test_float_rejected_in_exact_code():
    with pytest.raises(UsageError):
        to_scalar(0.5)


def test_registry_conjugation_swaps_partner_and_coefficients():
    reg = Registry(['mu', 'mubar'])
    p = reg.const(gauss(0, 1)) * reg.gen('mu') + reg.const(2)
    q = reg.conjugate(p)
    assert q == reg.const(gauss(0, -1)) * reg.gen('mubar') + reg.const(2)
    assert reg.conjugate(q) == p


def test_scalar_conjugate_flips_imaginary_part():
    from algebra import conjugate

    assert conjugate(gauss('1/2', 3)) == gauss('1/2', -3)
    assert conjugate(complex(1, 2)) == complex(1, -2)


def test_registry_rejects_unknown_symbols():
    reg = Registry(['x'])
    with pytest.raises(UsageError):
        reg.parse('x + y')
    with pytest.raises(UsageError):
        Registry(['x', 'x'])


def test_poly_json_preserves_polynomial():
    reg = Registry(['x', 'y'])
    x, y = reg.gens('x', 'y')
    p = x ** 3 * y - reg.const(gauss(1, 1)) * y + reg.const(5)
    assert reg.convert(poly_from_json(poly_to_json(p))) == p


def test_resultant_of_linear_and_quadratic():
    reg = Registry(['x', 'y'])
    x, y = reg.gens('x', 'y')
    assert resultant(x - y, x ** 2 - reg.one(), 'x') == y ** 2 - reg.one()


def test_resultant_of_zero_polynomials_is_undefined():
    reg = Registry(['x'])
    with pytest.raises(UndefinedInputError):
        resultant(reg.zero(), reg.zero(), 'x')


def test_fraction_free_determinant():
    M = [[gauss(2), gauss(1), gauss(0)], [gauss(1), gauss(3), gauss(1)], [gauss(0), gauss(1), gauss(4)]]
    assert det_fraction_free(M) == gauss(18)
    with pytest.raises(UsageError):
        det_fraction_free([[1, 2]])


def test_rank_kernel_and_solve():
    assert rank_exact([[1, 2], [2, 4]]) == 1
    kernel = nullspace_exact([[1, 2], [2, 4]])
    assert kernel == [[gauss(-2), gauss(1)]]
    assert solve_exact([[1, 1], [1, -1]], [2, 0]) == [gauss(1), gauss(1)]
    assert solve_exact([[1, 1], [1, 1]], [1, 2]) is None


def test_jet_products_drop_second_order():
    a = Jet1(1, {'e': 2})
    b = Jet1(3, {'e': 1})
    assert a * b == Jet1(3, {'e': 7})
    assert (a - a) == Jet1(0)


def test_jet_inverse_and_root():
    inv = Jet1(2.0, {'e': 1.0}).inverse()
    assert inv == Jet1(0.5, {'e': -0.25})
    root = Jet1(4 + 0j, {'e': 1 + 0j}).nth_root(2)
    assert (root - Jet1(2, {'e': 0.25})).max_abs() < 1e-12


def test_principal_root_branch():
    assert abs(principal_root(-1, 2) - 1j) < 1e-12
    assert principal_root(0, 3) == 0


def test_jet_determinants_agree():
    M = [[Jet1(1, {'e': 1}), 0], [0, 2]]
    exact = det_jet1(M)
    assert exact == Jet1(2, {'e': 2})
    numeric = det_jet_numeric(M)
    dev = jets_max_deviation([numeric], [Jet1(2, {'e': 2})])
    assert dev['body'] < 1e-12 and dev['soul'] < 1e-12


def test_localized_inverse_of_monomial():
    reg = Registry(['x', 'y'])
    x, y = reg.gens('x', 'y')
    L = Localized.of(x, [0])
    assert L * L.inverse() == 1
    assert L.inverse().den_power(0) == 1
    with pytest.raises(DegenerateStructureError):
        Localized.of(x + y, [0]).inverse()
    with pytest.raises(DegenerateStructureError):
        Localized.of(y, [0]).inverse()


def test_roots_numeric():
    roots = sorted(roots_numeric([1, 0, -1]), key=lambda z: z.real)
    assert abs(roots[0] + 1) < 1e-10 and abs(roots[1] - 1) < 1e-10
    assert roots_numeric([1, 0, 0]) == [0j, 0j]
    with pytest.raises(UndefinedInputError):
        roots_numeric([0, 1])


def test_identity_at_samples():
    reg = Registry(['x', 'y'])
    x, y = reg.gens('x', 'y')
    assert identity_at_samples((x + y) ** 2, x ** 2 + 2 * x * y + y ** 2)['status'] == 'pass'
    assert identity_at_samples((x + y) ** 2, x ** 2 + y ** 2)['status'] == 'fail'


def test_resultant_of_coefficient_lists():
    one, zero = gauss(1), gauss(0)
    assert resultant_coeffs([one, zero, gauss(-1)], [one, gauss(-2)], zero, one) == gauss(3)
    assert resultant_coeffs([one, zero, gauss(-1)], [one, gauss(-1)], zero, one) == zero
    assert resultant_coeffs([zero, one, gauss(4)], [zero], zero, one) == zero
    with pytest.raises(UndefinedInputError):
        resultant_coeffs([zero], [zero, zero], zero, one)


def test_random_polys_satisfy_ring_axioms():
    import random

    reg = Registry(['x', 'y', 'z'])
    rng = random.Random(7)
    p, q, r = (random_poly(reg, ['x', 'y'], 3, 4, rng) for _ in range(3))
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert set(poly_vars(p * q)) <= {'x', 'y'}
    x, y = reg.gens('x', 'y')
    assert poly_vars(x ** 2 * y + reg.const(1)) == ['x', 'y']


def test_identity_matrix_export_is_callable():
    import algebra

    I2 = algebra.identity(2)
    assert I2 == [[gauss(1), gauss(0)], [gauss(0), gauss(1)]]
    assert algebra.identity_at_samples is algebra.identities.identity_at_samples
