from .partitions import multiplicity_partitions, binomial_identity
from .conjugation import (ConjPoint, conj_mu, conj_mu_partition, conj_t, conj_t_resultant, conj_t_symbolic,
                          conj_t_check, conj_point, conj_involution_check, reversion, symbolic_registry,
                          mubar_name, tbar_name)

__all__ = [
    'multiplicity_partitions', 'binomial_identity',
    'ConjPoint', 'conj_mu', 'conj_mu_partition', 'conj_t', 'conj_t_resultant', 'conj_t_symbolic',
    'conj_t_check', 'conj_point', 'conj_involution_check', 'reversion', 'symbolic_registry',
    'mubar_name', 'tbar_name'
]
