import pytest

from algebra import Localized, Registry
from conjstruct import (binomial_identity, conj_involution_check, conj_mu, conj_point, conj_t, conj_t_check,
                        multiplicity_partitions, reversion)
from core.errors import DegenerateStructureError, UsageError


def test_partitions_as_multiplicity_vectors():
    assert len(list(multiplicity_partitions(4))) == 5
    assert list(multiplicity_partitions(4, 2)) == [(0, 2, 0, 0), (1, 0, 1, 0)]
    assert list(multiplicity_partitions(0)) == [()]


def test_partition_binomial_identity():
    assert all(row['ok'] for row in binomial_identity(7))


def test_series_reversion():
    assert reversion([1, 1], 3) == [1.0, -1.0]
    with pytest.raises(DegenerateStructureError):
        reversion([0, 1], 3)


def test_numeric_conjugated_mu_closed_forms():
    mb = [1.3 + 0.4j, -0.2 + 0.5j, 0.7 - 0.1j]
    kmu = conj_mu(mb)
    expected = [1 / mb[0], -mb[1] / mb[0] ** 3, (-mb[0] * mb[2] + 2 * mb[1] ** 2) / mb[0] ** 5]
    assert max(abs(a - b) for a, b in zip(kmu, expected)) < 1e-12


def test_symbolic_conjugated_mu_inverts_mu2bar():
    reg = Registry(['mu2bar', 'mu3bar'])
    mu2bar, mu3bar = reg.gens('mu2bar', 'mu3bar')
    kmu2, kmu3 = conj_mu([mu2bar, mu3bar])
    assert kmu2 * Localized.of(mu2bar, [0]) == 1
    assert kmu3.den_power(0) == 3


def test_vanishing_mu2bar_is_degenerate():
    with pytest.raises(DegenerateStructureError):
        conj_mu([0j, 1 + 0j])
    with pytest.raises(DegenerateStructureError):
        conj_t([0j], [1 + 0j])


def test_conjugated_t_order_two():
    assert conj_t([2], [3]) == [12]
    with pytest.raises(UsageError):
        conj_t([2, 1], [3])


@pytest.mark.parametrize('n', [2, 3, 4])
def test_partition_formula_matches_elimination(n):
    assert conj_t_check(n)['status'] == 'ok'


def test_conjugation_is_an_involution():
    devs = conj_involution_check([1.1 + 0.3j, 0.2 - 0.1j], [0.4 + 0.1j, -0.3j], 3)
    assert devs['mu'] < 1e-10
    assert devs['t_body'] < 1e-12 and devs['t_soul'] < 1e-10


def test_conj_point_serializes():
    data = conj_point([1 + 1j], [2 + 0j]).to_dict()
    assert data['n'] == 2 and data['conjugated']
    assert abs(complex(data['kmu']['mu2']['re'], data['kmu']['mu2']['im']) - 1 / (1 + 1j)) < 1e-12
    assert set(data['kt']) == {'t2'}
