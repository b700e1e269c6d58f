"""Special-function kernel: Gamma family, hypergeometric series, Appell F1 and the dilogarithm."""

from .gamma import gamma, lgamma, beta, pochhammer, binomial, binomial_sequence, gauss_sum
from .hypergeometric import HyperParams, pfq, hyp2f1
from .appell import AppellParams, appell_f1, appell_f1_series, appell_f1_integral
from .dilogarithm import dilog
from .partial_fractions import (
    tan_partial_fraction, cot_partial_fraction, sech_partial_fraction,
    alternating_cubic_sum, alternating_cubic_closed
)

__all__ = [
    'gamma', 'lgamma', 'beta', 'pochhammer', 'binomial', 'binomial_sequence', 'gauss_sum',
    'HyperParams', 'pfq', 'hyp2f1',
    'AppellParams', 'appell_f1', 'appell_f1_series', 'appell_f1_integral',
    'dilog',
    'tan_partial_fraction', 'cot_partial_fraction', 'sech_partial_fraction',
    'alternating_cubic_sum', 'alternating_cubic_closed',
]
