import pytest

from algebra import commutator, gauss, to_scalar
from core.errors import ConstraintError, UsageError
from liehilb import (LieType, SlicePoint, annihilator_ideal, centralizer, contains, cotangent_dimensions,
                     dn_relations, exponents, extract_mu2, family_charpoly, family_ideal, grading, idealic_map,
                     ideals_equal, in_hilb, is_cyclic_matrix, is_regular, matrix_from_json, matrix_to_json,
                     minimal_polynomial, moduli_dimension, principal_copy, principal_nilpotent, principal_slice,
                     sl2_triple, slice_matrix, spectral_curve_genus)

TYPES = ['A2', 'A3', 'B2', 'C2', 'D3']


def scalars(values):
    return [to_scalar(v) for v in values]


def test_parse_accepts_underscore_and_case():
    assert LieType.parse('c_2') == LieType('C', 2)
    assert LieType.parse('D4').m == 8


@pytest.mark.parametrize('text', ['E6', 'A', 'D2', 'B0'])
def test_parse_rejects_bad_types(text):
    with pytest.raises(UsageError):
        LieType.parse(text)


@pytest.mark.parametrize('name', TYPES)
def test_exponents_count_the_dimension(name):
    T = LieType.parse(name)
    assert len(exponents(T)) == T.rank
    assert sum(2 * e + 1 for e in exponents(T)) == T.dim
    assert moduli_dimension(T, 3)['consistent']


def test_cotangent_and_spectral_genus():
    data = cotangent_dimensions(3, 2)
    assert data['dimensions'] == {2: 3, 3: 5}
    assert data['total'] == 8 and data['consistent']
    assert spectral_curve_genus(2, 2)['spectral_genus'] == 5
    with pytest.raises(UsageError):
        moduli_dimension(LieType('A', 2), 1)


@pytest.mark.parametrize('name', TYPES)
def test_principal_nilpotent_is_regular(name):
    T = LieType.parse(name)
    f = principal_nilpotent(T)
    assert contains(T, f)
    assert is_regular(f, T)


@pytest.mark.parametrize('name', TYPES)
def test_sl2_triple_relations(name):
    T = LieType.parse(name)
    e, f, h = sl2_triple(T)
    assert commutator(e, f) == h
    assert h == grading(T)


def test_nilpotent_minimal_polynomial():
    f = principal_nilpotent(LieType('A', 2))
    assert minimal_polynomial(f) == scalars([1, 0, 0, 0])
    assert not is_cyclic_matrix(principal_nilpotent(LieType('D', 3)))


@pytest.mark.parametrize('name,t,tau', [
    ('A2', [1, 2], None),
    ('B2', [1, -1], None),
    ('C2', [1, 2], None),
    ('D3', [1, 3], 2),
])
def test_slice_charpoly_matches_family(name, t, tau):
    _, check = principal_slice(LieType.parse(name), scalars(t), tau)
    assert check['match']


@pytest.mark.parametrize('rank,sign', [(3, -1), (4, 1)])
def test_d_constant_term_is_four_tau_squared(rank, sign):
    T = LieType('D', rank)
    t = scalars([0] * (rank - 1))
    assert family_charpoly(T, t, to_scalar(3))[-1] == to_scalar(sign * 36)
    _, check = principal_slice(T, t, to_scalar(3))
    assert check['match']


def test_tau_only_for_d():
    with pytest.raises(UsageError):
        principal_slice(LieType('C', 2), scalars([0, 0]), 1)


def test_d3_slice_cyclic_only_with_tau():
    T = LieType('D', 3)
    assert is_cyclic_matrix(slice_matrix(T, scalars([0, 0]), to_scalar(1)))
    assert not is_cyclic_matrix(slice_matrix(T, scalars([0, 0]), to_scalar(0)))


@pytest.mark.parametrize('name,t,mu', [
    ('A2', [1, 2], [1, 1]),
    ('C2', [1, 2], [1, 0]),
    ('D3', [0, 0], [1, 1]),
])
def test_slice_points_lie_in_hilb(name, t, mu):
    T = LieType.parse(name)
    A, B = SlicePoint(T, scalars(t), scalars(mu)).matrices()
    assert in_hilb(A, B, T)
    assert centralizer(A, T, B).dimension == T.rank


def test_non_commuting_pair_is_not_in_hilb():
    T = LieType('A', 2)
    e, f, _ = sl2_triple(T)
    assert not in_hilb(f, e, T)


def test_slice_point_parameter_count():
    with pytest.raises(ConstraintError):
        SlicePoint(LieType('A', 2), scalars([0, 0]), scalars([1])).matrices()
    with pytest.raises(UsageError):
        SlicePoint(LieType('C', 2), scalars([0, 0]), scalars([0, 0]), tau=1)


@pytest.mark.parametrize('name,mu', [('A2', [3, 1]), ('D3', [2, 0])])
def test_extract_mu2_at_zero_fiber(name, mu):
    T = LieType.parse(name)
    A, B = SlicePoint(T, [0] * len(mu), scalars(mu)).matrices()
    assert extract_mu2(A, B, T) == to_scalar(mu[0])


@pytest.mark.parametrize('name,t,mu', [('A2', [1, 2], [1, 1]), ('C2', [1, 2], [1, 0])])
def test_displayed_ideal_matches_annihilator(name, t, mu):
    point = SlicePoint(LieType.parse(name), scalars(t), scalars(mu))
    image = idealic_map(point)
    assert image.ideal.n == point.type.m
    assert not image.noncontinuous
    assert ideals_equal(family_ideal(point), image.ideal)


def test_symplectic_image_is_minus_id_invariant():
    image = idealic_map(SlicePoint(LieType('C', 2), scalars([1, 2]), scalars([1, 0])))
    assert image.invariant is True
    assert image.to_dict()['codim'] == 4


def test_dn_relations_d3():
    data = dn_relations(LieType('D', 3))
    assert data['status'] == 'pass'
    assert data['S2_constant'] == '1'
    assert not data['S2_matches_documented']
    with pytest.raises(UsageError):
        dn_relations(LieType('C', 2))


def test_principal_copy_stays_in_hilb():
    data = principal_copy(LieType('B', 2), gauss(1), gauss(2))
    assert data['regular']
    assert data['in_hilb']


def test_matrix_json_keeps_exact_entries():
    A, _ = SlicePoint(LieType('A', 2), scalars([1, 2]), scalars([1, 1])).matrices()
    assert matrix_from_json(matrix_to_json(A)) == A
    assert matrix_from_json([['1/2', 0], [0, 'I']])[1][1] == gauss(0, 1)
    with pytest.raises(UsageError):
        matrix_from_json([[1, 0]])


def test_annihilator_of_a_plain_commuting_pair():
    shift = [scalars([0, 0]), scalars([1, 0])]
    ideal = annihilator_ideal(shift, [scalars([0, 0]), scalars([0, 0])])
    assert ideal.n == 2
    assert ideal.contains(ideal.monomial(2, 0))
    assert ideal.contains(ideal.monomial(0, 1))
    assert not ideal.contains(ideal.monomial(1, 0))


def test_annihilator_agrees_with_idealic_map():
    point = SlicePoint(LieType('C', 2), scalars([1, 2]), scalars([1, 0]))
    A, B = point.matrices()
    assert ideals_equal(annihilator_ideal(A, B), idealic_map(point).ideal)
