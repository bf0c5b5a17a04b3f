"""Newton series ``F_alpha(z) = sum_n (-1)^n (nabla S_alpha)(n) C(z, n)``.

At non-negative integers the series is a finite sum and reproduces
``S_alpha(n)`` exactly.  Elsewhere it converges for ``Re z`` above the
abscissa ``-(first part of the dual of alpha)``.

The coefficient table uses the closed form

    (nabla S_alpha)(n) = S_{alpha*}(n-1) - S_{alpha*}(n)
                       = -n^(-a_1) * S_{(a_2, ..., a_t)}(n),   alpha* = (a_1, ..., a_t)

(the difference recurrence applied to the dual index), which costs
``O(N * l)`` instead of the ``O(N^2)`` alternating binomial sums.
:func:`nabla_table_exact` checks it against the definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .estimate import SumEstimate
from .multiindex import MultiIndexError, as_multi_index, dual
from .sequences import (binom_exact, multi_harmonic_float, multi_harmonic_prefix,
                        nabla_prefix)

EPS = np.finfo(float).eps
MIN_TERMS = 16


def abscissa(alpha) -> int:
    """Abscissa of convergence of ``F_alpha``: ``-dual(alpha)[0]``."""
    return -dual(alpha)[0]


def nabla_table_exact(alpha, N: int) -> list[Fraction]:
    """``(nabla S_alpha)(0..N)`` from the definition (alternating binomial sums)."""
    return nabla_prefix(multi_harmonic_prefix(as_multi_index(alpha), N))


def nabla_table_dual(alpha, N: int) -> list[Fraction]:
    """Same table through the dual-index closed form, exactly."""
    star = dual(alpha)
    inner = multi_harmonic_prefix(star[1:], N)
    return [Fraction(0)] + [-inner[n] / Fraction(n) ** star[0] for n in range(1, N + 1)]


def nabla_table_float(alpha, N: int) -> np.ndarray:
    star = dual(alpha)
    n = np.arange(N + 1, dtype=float)
    inner = multi_harmonic_float(star[1:], N)
    out = np.zeros(N + 1)
    out[1:] = -inner[1:] / n[1:] ** star[0]
    return out


def newton_eval_int(alpha, n: int) -> Fraction:
    """Finite Newton sum at a non-negative integer, exactly."""
    alpha = as_multi_index(alpha)
    if not alpha:
        raise MultiIndexError("F_alpha needs a nonempty multi-index")
    if n < 0:
        raise ValueError("n must be >= 0")
    table = nabla_table_exact(alpha, n)
    acc = Fraction(0)
    for k in range(n + 1):
        term = table[k] * binom_exact(n, k)
        acc += -term if k & 1 else term
    return acc


def _signed_binomials(z: complex, N: int) -> np.ndarray:
    """``(-1)^n C(z, n)`` for n = 0..N via cumulative log-magnitudes.

    Each step multiplies by ``(n - 1 - z) / n``; summing logs keeps the
    magnitude representable for large N and large ``Re z``.
    """
    n = np.arange(1, N + 1, dtype=float)
    ratios = (n - 1 - z) / n
    out = np.empty(N + 1, dtype=complex)
    out[0] = 1.0
    with np.errstate(divide="ignore"):
        if z.imag == 0.0:
            r = ratios.real
            logmag = np.cumsum(np.log(np.abs(r)))
            sign = np.cumprod(np.sign(r))
            out[1:] = sign * np.exp(logmag)
        else:
            out[1:] = np.exp(np.cumsum(np.log(ratios)))
    return out


@dataclass(frozen=True)
class NewtonSeries:
    """``F_alpha`` with its coefficient table cached to ``N`` terms."""

    alpha: tuple
    N: int
    abscissa: int = field(init=False)
    table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alpha = as_multi_index(self.alpha)
        if not alpha:
            raise MultiIndexError("F_alpha needs a nonempty multi-index")
        if self.N < MIN_TERMS:
            raise ValueError(f"need at least {MIN_TERMS} terms")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "abscissa", abscissa(alpha))
        table = nabla_table_float(alpha, self.N)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def exact_table(self) -> list[Fraction]:
        return nabla_table_dual(self.alpha, self.N)

    def terms(self, z: complex) -> np.ndarray:
        return self.table * _signed_binomials(complex(z), self.N)

    def __call__(self, z: complex) -> SumEstimate:
        z = complex(z)
        if not z.real > self.abscissa:
            raise ValueError(f"Re z = {z.real:g} is not above the abscissa {self.abscissa}")
        terms = self.terms(z)
        value = complex(math.fsum(terms.real), math.fsum(terms.imag))
        mags = np.abs(terms)
        N = self.N
        block = max(8, N // 10)
        recent = math.fsum(mags[-block:])
        err = recent + _power_tail(mags, N)
        rounding = 16 * EPS * math.sqrt(N) * (1 + math.log(N)) * (abs(z) + 1) * math.fsum(mags)
        return SumEstimate(value, err + rounding)


def _power_tail(mags: np.ndarray, N: int) -> float:
    """Remainder past N assuming |term_n| ~ n^-p, with p read off N/2 -> N."""
    last, mid = mags[N], mags[N // 2]
    if last == 0.0:
        return 0.0
    if mid == 0.0:
        return float(last * N)
    p = math.log(mid / last) / math.log(N / (N // 2))
    if p <= 1.05:
        return float(20 * last * N)
    return float(last * N / (p - 1))


def newton_eval(alpha, z: complex, N: int = 10**5) -> SumEstimate:
    """``F_alpha(z)`` from the first ``N + 1`` terms."""
    return NewtonSeries(as_multi_index(alpha), N)(z)
