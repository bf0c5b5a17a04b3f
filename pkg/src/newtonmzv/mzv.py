"""Multiple zeta values from the nested-sum engine.

``zeta(k_1, ..., k_p)`` is the all-strict chain ``n_1 > ... > n_p > 0`` with
exponents ``k_i``; it is extended linearly to :class:`IndexCombo`.  No
tabulated constants are used anywhere.
"""

from __future__ import annotations

from functools import lru_cache

from .estimate import SumEstimate, combine
from .multiindex import (IndexCombo, MultiIndexError, as_multi_index, is_admissible,
                         raise_first)
from .nested import zeta_alpha_eval

DEFAULT_TRUNCATION = 10**6


@lru_cache(maxsize=4096)
def _zeta_cached(mu: tuple, M: int) -> SumEstimate:
    return zeta_alpha_eval((len(mu),), mu, M)


def zeta_eval(mu, M: int = DEFAULT_TRUNCATION) -> SumEstimate:
    mu = as_multi_index(mu)
    if not is_admissible(mu):
        raise MultiIndexError(f"{mu} is not admissible (need a first part >= 2)")
    return _zeta_cached(mu, int(M))


def zeta_combo(v, M: int = DEFAULT_TRUNCATION) -> SumEstimate:
    """Linear extension of :func:`zeta_eval`; errors add as ``sum |c| err``."""
    v = IndexCombo.coerce(v)
    bad = [k for k in v if not is_admissible(k)]
    if bad:
        raise MultiIndexError(f"non-admissible terms in combination: {bad}")
    return combine((float(c), zeta_eval(k, M)) for k, c in v.items())


def zeta_plus(v, M: int = DEFAULT_TRUNCATION) -> SumEstimate:
    """``zeta`` after raising the first part of every term by one."""
    v = IndexCombo.coerce(v)
    if () in v:
        raise MultiIndexError("zeta_plus is undefined on the empty multi-index")
    return zeta_combo(v.map(raise_first), M)
