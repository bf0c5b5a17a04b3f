"""Exact sequence operators and finite multiple harmonic sums.

Sequences are finite prefixes ``a(0..N)`` held as lists of
:class:`fractions.Fraction`.  The difference operator is
``(delta a)(n) = a(n) - a(n+1)`` and the inversion operator is
``(nabla a)(n) = (delta^n a)(0)``.

The harmonic sums use the shifted, non-strict convention::

    S_alpha(n) = sum over n > n_1 >= ... >= n_s >= 0 of
                 1 / ((n_1+1)^alpha_1 ... (n_s+1)^alpha_s)

so ``S_alpha(0) == 0`` for every nonempty alpha.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .multiindex import MultiIndexError, as_multi_index


def _as_prefix(a: Sequence) -> list[Fraction]:
    return [Fraction(x) for x in a]


def delta(a: Sequence) -> list[Fraction]:
    a = _as_prefix(a)
    if len(a) < 2:
        raise ValueError("delta needs a prefix of length >= 2")
    return [a[n] - a[n + 1] for n in range(len(a) - 1)]


def nabla_prefix(a: Sequence) -> list[Fraction]:
    """Binomial transform ``sum_k (-1)^k C(n,k) a(k)``; an involution on prefixes."""
    a = _as_prefix(a)
    out = []
    for n in range(len(a)):
        acc = Fraction(0)
        for k in range(n + 1):
            term = comb(n, k) * a[k]
            acc += -term if k & 1 else term
        out.append(acc)
    return out


def multi_harmonic_prefix(alpha, N: int) -> list[Fraction]:
    """Exact ``[S_alpha(0), ..., S_alpha(N)]`` by innermost-outward prefix sums.

    With ``k = n_i + 1`` the chain is ``n >= k_1 >= ... >= k_s >= 1``; each level
    is the running sum of ``k^-a_i`` times the level below, so the whole prefix
    costs ``O(N * l(alpha))`` rational operations.  The empty index gives the
    constant sequence 1 (used as the base of the recurrence).
    """
    alpha = as_multi_index(alpha)
    if N < 0:
        raise ValueError("N must be >= 0")
    # level[k] = sum over k >= k_i >= ... of the inner product, k = 0..N
    level = [Fraction(1)] * (N + 1)
    for a in reversed(alpha):
        nxt = [Fraction(0)] * (N + 1)
        acc = Fraction(0)
        for k in range(1, N + 1):
            acc += level[k] / k**a
            nxt[k] = acc
        level = nxt
    return level


def multi_harmonic(alpha, n: int) -> Fraction:
    """``S_alpha(n)`` as an exact rational."""
    alpha = as_multi_index(alpha)
    if not alpha:
        raise MultiIndexError("S_alpha needs a nonempty multi-index")
    if n < 0:
        raise ValueError("n must be >= 0")
    return multi_harmonic_prefix(alpha, n)[n]


def multi_harmonic_float(alpha, N: int) -> np.ndarray:
    """Float64 ``S_alpha(0..N)``; all summands are positive so plain cumsum is stable."""
    alpha = as_multi_index(alpha)
    k = np.arange(N + 1, dtype=np.float64)
    level = np.ones(N + 1)
    for a in reversed(alpha):
        terms = np.zeros(N + 1)
        terms[1:] = level[1:] / k[1:] ** a
        level = np.cumsum(terms)
    return level


def binom_exact(n: int, k: int) -> Fraction:
    if n < 0:
        raise ValueError("binom_exact needs n >= 0")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(comb(n, k))


def binom_complex(z: complex, n: int) -> complex:
    """``z (z-1) ... (z-n+1) / n!`` by a running product."""
    if n < 0:
        raise ValueError("binom_complex needs n >= 0")
    out = complex(1.0)
    for j in range(n):
        out *= (z - j) / (j + 1)
    return out
