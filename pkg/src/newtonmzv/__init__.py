"""Multi-index algebra, Newton series interpolation of multiple harmonic sums,
nested multiple series and numerical multiple zeta values."""

from .estimate import SumEstimate
from .multiindex import (IndexCombo, MultiIndexError, backprime, circledast,
                         coarsen_inverse, coarsen_sum, dual, parse_combo,
                         parse_multi_index, refine_sum, reverse, stuffle)
from .mzv import zeta_combo, zeta_eval, zeta_plus
from .nested import (ChainPattern, PatternMatrix, chain_eval, g_derivative, g_eval,
                     phi_eval, zeta_alpha_eval)
from .newton import NewtonSeries, abscissa, newton_eval, newton_eval_int
from .sequences import multi_harmonic

__all__ = [
    "ChainPattern", "IndexCombo", "MultiIndexError", "NewtonSeries", "PatternMatrix",
    "SumEstimate", "abscissa", "backprime", "chain_eval", "circledast", "coarsen_inverse",
    "coarsen_sum", "dual", "g_derivative", "g_eval", "multi_harmonic", "newton_eval",
    "newton_eval_int", "parse_combo", "parse_multi_index", "phi_eval", "refine_sum",
    "reverse", "stuffle", "zeta_alpha_eval", "zeta_combo", "zeta_eval", "zeta_plus",
]
