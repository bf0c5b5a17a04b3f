"""Nested multiple series over totally ordered index chains.

Every series evaluated here has the shape

    sum over x_1 (>|>=|=) x_2 (>|>=|=) ... x_w >= 1 of k_1(x_1) ... k_w(x_w)

with kernels built from ``1/x``, ``1/(x+z)`` and ``1/x - 1/(x+z)``.  The
series ``G_alpha(z)``, ``zeta_alpha(mu)`` and the pattern-matrix sums
``Phi_n(C)`` are all instances.  They are summed by one compiled sweep over
``x = 1..M`` (see :mod:`newtonmzv._dp`), after which the part with the
outermost variable above ``M`` is estimated from the asymptotics of the
inner partial sums.

Tail model
----------
The outer summand is ``k_1(x) * B(x)`` where ``B`` is the inner nested sum
bounded by ``x``.  ``B`` grows like a polynomial in ``log x`` whose degree is
the number of leading ``1/x``-decaying kernels, plus ``O(log^j x / x)``.  We
least-squares fit that form over checkpoints in ``[M/64, M]``, then
integrate ``k_1 * B`` beyond ``M`` with Gauss-Laguerre in ``log x``.  The
reported error is the disagreement between the corrected values at ``M``
and ``M/2`` plus a rounding bound.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _dp
from .estimate import ZERO, SumEstimate, combine
from .multiindex import MultiIndexError, as_multi_index

EPS = np.finfo(float).eps
POLE_GUARD = 2.0 ** -20
MIN_TRUNCATION = 16

_FIT_WINDOW = 64  # fit B(x) over [M/64, M]
_CHECKPOINTS_PER_OCTAVE = 8
_LAGUERRE = np.polynomial.laguerre.laggauss(60)


class Comparator(str, enum.Enum):
    STRICT = ">"
    WEAK = ">="
    EQUAL = "="

    @classmethod
    def parse(cls, token) -> "Comparator":
        aliases = {">": cls.STRICT, ">=": cls.WEAK, "≥": cls.WEAK, "=": cls.EQUAL}
        if isinstance(token, Comparator):
            return token
        try:
            return aliases[str(token).strip()]
        except KeyError:
            raise ValueError(f"unknown comparator {token!r}") from None


@dataclass(frozen=True)
class Kernel:
    """``x**-x_power * (x+z)**-shift_power * (1/x - 1/(x+z))**tilde_power``."""

    x_power: int = 0
    shift_power: int = 0
    tilde_power: int = 0

    def __mul__(self, other: "Kernel") -> "Kernel":
        return Kernel(self.x_power + other.x_power,
                      self.shift_power + other.shift_power,
                      self.tilde_power + other.tilde_power)

    @property
    def decay(self) -> int:
        return self.x_power + self.shift_power + 2 * self.tilde_power

    @property
    def has_shift(self) -> bool:
        return self.shift_power > 0 or self.tilde_power > 0

    def __call__(self, x, z):
        return _dp.kernel_values(np.atleast_1d(np.asarray(x, dtype=float)), complex(z),
                                 self.x_power, self.shift_power, self.tilde_power)


PLAIN = Kernel(x_power=1)
SHIFTED = Kernel(shift_power=1)
TILDE_FIRST = Kernel(tilde_power=1)


def POWER(e: int) -> Kernel:
    if e < 1:
        raise ValueError("POWER exponent must be >= 1")
    return Kernel(x_power=e)


@dataclass(frozen=True)
class ChainPattern:
    """Kernels from the outermost variable inward and the comparators between them."""

    kernels: tuple
    comparators: tuple

    def __post_init__(self):
        kernels = tuple(self.kernels)
        comparators = tuple(Comparator.parse(c) for c in self.comparators)
        if not kernels:
            raise ValueError("a chain needs at least one position")
        if len(comparators) != len(kernels) - 1:
            raise ValueError("need exactly one comparator between consecutive positions")
        object.__setattr__(self, "kernels", kernels)
        object.__setattr__(self, "comparators", comparators)

    @property
    def depth(self) -> int:
        return len(self.kernels)

    def reduced(self) -> "ChainPattern":
        """Substitute pinned (``=``) neighbours into a single merged position."""
        kernels = [self.kernels[0]]
        comps = []
        for comp, ker in zip(self.comparators, self.kernels[1:]):
            if comp is Comparator.EQUAL:
                kernels[-1] = kernels[-1] * ker
            else:
                comps.append(comp)
                kernels.append(ker)
        return ChainPattern(tuple(kernels), tuple(comps))

    def min_values(self) -> list[int]:
        """Smallest admissible value of each (reduced) position."""
        out = [1] * self.depth
        for j in range(self.depth - 2, -1, -1):
            out[j] = out[j + 1] + (self.comparators[j] is Comparator.STRICT)
        return out


# ---------------------------------------------------------------------------
# pattern builders
# ---------------------------------------------------------------------------

def _block_layout(alpha: Sequence[int]) -> list[Comparator]:
    comps = []
    for i, a in enumerate(alpha):
        if i:
            comps.append(Comparator.WEAK)
        comps.extend([Comparator.STRICT] * (a - 1))
    return comps


def g_pattern(alpha) -> ChainPattern:
    """Chain for ``G_alpha``: strict inside blocks, weak between blocks."""
    alpha = as_multi_index(alpha)
    if not alpha:
        raise MultiIndexError("G_alpha needs a nonempty multi-index")
    kernels = []
    for i, a in enumerate(alpha):
        kernels.append(TILDE_FIRST if i == 0 else SHIFTED)
        kernels.extend([PLAIN] * (a - 1))
    return ChainPattern(tuple(kernels), tuple(_block_layout(alpha)))


def zeta_alpha_pattern(alpha, mu) -> ChainPattern:
    alpha = as_multi_index(alpha)
    mu = as_multi_index(mu)
    if len(mu) != sum(alpha):
        raise ValueError(f"l(mu) = {len(mu)} must equal |alpha| = {sum(alpha)}")
    return ChainPattern(tuple(POWER(m) for m in mu), tuple(_block_layout(alpha)))


def beta_decomposition(alpha) -> list[tuple[int, int]]:
    """Split alpha into groups ``(1, ..., 1, b'+1)`` of length ``b``; returns ``[(b, b')]``.

    >>> beta_decomposition((1, 1, 3, 1))
    [(3, 2), (1, 0)]
    """
    alpha = as_multi_index(alpha)
    if not alpha:
        raise MultiIndexError("beta_decomposition needs a nonempty multi-index")
    out, run = [], 0
    for i, a in enumerate(alpha):
        run += 1
        if a >= 2 or i == len(alpha) - 1:
            out.append((run, a - 1))
            run = 0
    return out


# ---------------------------------------------------------------------------
# pattern matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixRow:
    box: Optional[Comparator]
    gamma: int
    boxp: Comparator
    gammap: int


@dataclass(frozen=True)
class PatternMatrix:
    """A four-column pattern matrix: rows ``(box, gamma, box', gamma')``.

    Row ``i`` contributes a block of ``gamma`` shifted kernels (the first
    block's head is the tilde kernel) chained by ``>=``, then ``box'`` and a
    block of ``gamma'`` plain kernels chained by ``>``.  ``box`` links the
    row to the previous one.
    """

    rows: tuple

    def __post_init__(self):
        rows = []
        for i, r in enumerate(self.rows):
            if not isinstance(r, MatrixRow):
                box, gamma, boxp, gammap = r
                r = MatrixRow(None if box is None else Comparator.parse(box), int(gamma),
                              Comparator.parse(boxp), int(gammap))
            rows.append(r)
        object.__setattr__(self, "rows", tuple(rows))
        self._validate()

    def _validate(self):
        rows = self.rows
        if not rows:
            raise ValueError("a pattern matrix needs at least one row")
        if rows[0].box is not None:
            raise ValueError("the (1,1) entry must be empty")
        if rows[0].gamma < 1:
            raise ValueError("gamma_1 must be >= 1")
        for i, r in enumerate(rows):
            if r.gamma < 0 or r.gammap < 0:
                raise ValueError("block lengths must be non-negative")
            if i and r.box is None:
                raise ValueError(f"row {i + 1} needs a leading comparator")
            if i and r.gamma == 0 and r.box is not r.boxp:
                raise ValueError(f"row {i + 1}: gamma = 0 requires box = box'")
            if i < len(rows) - 1 and r.gammap == 0 and r.boxp is not rows[i + 1].box:
                raise ValueError(f"row {i + 1}: gamma' = 0 requires box' = next row's box")
        flat = [g for r in rows for g in (r.gamma, r.gammap)]
        for a, b in zip(flat, flat[1:]):
            if a == 0 and b == 0:
                raise ValueError("two adjacent empty blocks are not supported")

    def chain(self) -> ChainPattern:
        kernels: list[Kernel] = []
        comps: list[Comparator] = []
        pending: Optional[Comparator] = None

        def add_block(n, first, rest, inner):
            nonlocal pending
            for j in range(n):
                if kernels:
                    comps.append(pending if j == 0 else inner)
                kernels.append(first if j == 0 else rest)

        for i, r in enumerate(self.rows):
            if i:
                pending = r.box
            add_block(r.gamma, TILDE_FIRST if i == 0 else SHIFTED, SHIFTED, Comparator.WEAK)
            if r.gamma:
                pending = r.boxp
            add_block(r.gammap, PLAIN, PLAIN, Comparator.STRICT)
        return ChainPattern(tuple(kernels), tuple(comps))

    def to_json(self) -> list:
        return [[None if r.box is None else r.box.value, r.gamma, r.boxp.value, r.gammap]
                for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "PatternMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data["rows"]
        return cls(tuple(tuple(r) for r in data))


def g_matrix(alpha) -> PatternMatrix:
    """The matrix whose ``Phi_n`` is ``G_alpha(n)``."""
    rows = []
    for i, (b, bp) in enumerate(beta_decomposition(alpha)):
        rows.append((None if i == 0 else ">=", b, ">", bp))
    return PatternMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _checkpoints(M: int) -> np.ndarray:
    n = _CHECKPOINTS_PER_OCTAVE * (int(math.log2(2 * _FIT_WINDOW)) + 1)
    pts = {M, M // 2}
    for k in range(n + 1):
        pts.add(int(round(M * 2.0 ** (-k / _CHECKPOINTS_PER_OCTAVE))))
    return np.array(sorted(p for p in pts if p >= 1), dtype=np.int64)


def _check_poles(chain: ChainPattern, z: complex):
    mins = chain.min_values()
    for ker, lo in zip(chain.kernels, mins):
        if not ker.has_shift:
            continue
        x0 = max(lo, round(-z.real))
        for x in (x0, x0 + 1):
            if x >= lo and abs(x + z) < POLE_GUARD:
                raise ValueError(f"denominator x + z vanishes (x = {x}, z = {z})")


@dataclass(frozen=True)
class _Sweep:
    chain: ChainPattern
    z: complex
    M: int
    checkpoints: np.ndarray
    totals: np.ndarray
    inner: np.ndarray
    abs_mass: float

    def raw(self, m: int) -> complex:
        return complex(self.totals[np.searchsorted(self.checkpoints, m)])

    def rounding(self) -> float:
        return 8.0 * (self.chain.depth + 2) * EPS * self.abs_mass

    def _degrees(self) -> tuple[int, int]:
        decays = [k.decay for k in self.chain.kernels[1:]]
        lead = 0
        for d in decays:
            if d != 1:
                break
            lead += 1
        return lead, max(lead, sum(d == 1 for d in decays))

    def corrected(self, m: int) -> complex:
        """Truncated value at ``m`` plus the modelled remainder ``x_1 > m``."""
        s = self.raw(m)
        outer = self.chain.kernels[0]
        if self.chain.depth == 1:
            coef, d0, d1 = None, 0, -1
        else:
            d0, d1 = self._degrees()
            sel = (self.checkpoints <= m) & (self.checkpoints >= m / _FIT_WINDOW)
            x = self.checkpoints[sel].astype(float)
            if x.size < (d0 + 1) + (d1 + 1) + 4:
                return s
            coef = np.linalg.lstsq(_basis(x, m, d0, d1), self.inner[sel], rcond=None)[0]
        nodes, weights = _LAGUERRE
        rate = outer.decay - 1
        X = m + 0.5
        u = nodes / rate
        xx = X * np.exp(u)
        b = np.ones_like(xx, dtype=complex) if coef is None else _basis(xx, m, d0, d1) @ coef
        f = _dp.kernel_values(xx, self.z, outer.x_power, outer.shift_power, outer.tilde_power)
        return s + complex(np.sum(weights * f * b * xx * np.exp(nodes)) / rate)


def _basis(x: np.ndarray, m: int, d0: int, d1: int) -> np.ndarray:
    t = np.log(x / m)
    cols = [t ** j for j in range(d0 + 1)] + [(m / x) * t ** j for j in range(d1 + 1)]
    return np.array(cols, dtype=complex).T


def _sweep(pattern: ChainPattern, z: complex, M: int) -> _Sweep:
    if M < MIN_TRUNCATION:
        raise ValueError(f"truncation M must be >= {MIN_TRUNCATION}")
    chain = pattern.reduced()
    z = complex(z)
    if chain.kernels[0].decay < 2:
        raise ValueError("outermost kernel decays like 1/x: the series diverges")
    _check_poles(chain, z)
    cps = _checkpoints(M)
    e = np.array([k.x_power for k in chain.kernels], dtype=np.int64)
    s = np.array([k.shift_power for k in chain.kernels], dtype=np.int64)
    t = np.array([k.tilde_power for k in chain.kernels], dtype=np.int64)
    strict = np.array([c is Comparator.STRICT for c in chain.comparators] + [False], dtype=np.bool_)
    mins = np.array(chain.min_values(), dtype=np.int64)
    totals, inner, mass = _dp.chain_sweep(e, s, t, strict, mins, z, cps)
    return _Sweep(chain, z, M, cps, totals, inner, float(mass))


def _pair(pattern: ChainPattern, z: complex, M: int, correct_tail: bool):
    """``(value at M, value at M/2, rounding bound)``."""
    sw = _sweep(pattern, z, M)
    f = sw.corrected if correct_tail else sw.raw
    return f(M), f(M // 2), sw.rounding()


def chain_eval(pattern: ChainPattern, z: complex, M: int, correct_tail: bool = False) -> SumEstimate:
    """Sum ``pattern`` with every variable ``<= M``.

    With ``correct_tail`` the remainder beyond ``M`` is modelled and added.
    Either way ``err = |value(M) - value(M/2)| + rounding``.
    """
    hi, half, rnd = _pair(pattern, z, M, correct_tail)
    return SumEstimate(hi, abs(hi - half) + rnd)


def _check_g_argument(z: complex):
    z = complex(z)
    if z.imag == 0 and z.real < 0 and z.real == int(z.real):
        raise ValueError(f"G_alpha is undefined at negative integers (z = {z.real:g})")
    return z


def g_eval(alpha, z: complex, M: int = 10**6, correct_tail: bool = True) -> SumEstimate:
    """``G_alpha(z)`` truncated at ``M`` (tail-corrected by default)."""
    z = _check_g_argument(z)
    pattern = g_pattern(alpha)
    if z == 0:
        return ZERO
    return chain_eval(pattern, z, M, correct_tail)


def zeta_alpha_eval(alpha, mu, M: int = 10**6, correct_tail: bool = True) -> SumEstimate:
    """``zeta_alpha(mu)``: exponents ``mu`` laid out on alpha's block chain."""
    mu = as_multi_index(mu)
    pattern = zeta_alpha_pattern(alpha, mu)
    if mu[0] < 2:
        raise ValueError(f"leading exponent must be >= 2 for convergence, got {mu}")
    return chain_eval(pattern, 0.0, M, correct_tail)


PhiArgument = Union[PatternMatrix, Iterable]


def _phi_terms(C) -> list[tuple[Fraction, PatternMatrix]]:
    if isinstance(C, PatternMatrix):
        return [(Fraction(1), C)]
    return [(Fraction(c), m if isinstance(m, PatternMatrix) else PatternMatrix(m)) for c, m in C]


def phi_eval(C: PhiArgument, n: int, M: int = 10**6, correct_tail: bool = True) -> SumEstimate:
    """``Phi_n`` of a pattern matrix, or of ``[(coeff, matrix), ...]`` by linearity."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a non-negative integer")
    terms = _phi_terms(C)
    return combine((c, chain_eval(m.chain(), float(n), M, correct_tail)) for c, m in terms)


# ---------------------------------------------------------------------------
# derivatives at the origin
# ---------------------------------------------------------------------------

_STENCILS = {
    1: ((1, 0.5), (-1, -0.5)),
    2: ((1, 1.0), (0, -2.0), (-1, 1.0)),
    3: ((2, 0.5), (1, -1.0), (-1, 1.0), (-2, -0.5)),
    4: ((2, 1.0), (1, -4.0), (0, 6.0), (-1, -4.0), (-2, 1.0)),
}


def g_derivative(alpha, k: int, M: int = 10**6, h: float = 0.05) -> SumEstimate:
    """Taylor coefficient ``G_alpha^(k)(0) / k!`` by central differences.

    Second-order stencils at steps ``h, h/2, h/4`` are Richardson-combined
    twice; the spread between the two extrapolants is the differentiation
    error and the same stencil applied to the ``M/2`` values gives the
    truncation error.
    """
    if k == 0:
        return ZERO
    if k not in _STENCILS:
        raise ValueError("k must be in 1..4")
    if not 0 < h <= 0.1:
        raise ValueError("h must lie in (0, 0.1]")
    pattern = g_pattern(alpha)
    cache: dict[float, tuple] = {}

    def values(z: float):
        if z == 0.0:
            return 0.0, 0.0, 0.0
        if z not in cache:
            cache[z] = _pair(pattern, z, M, True)
        return cache[z]

    def stencil(step: float):
        hi = half = rnd = 0.0
        for offset, w in _STENCILS[k]:
            a, b, r = values(offset * step)
            hi += w * a
            half += w * b
            rnd += abs(w) * (r + EPS * abs(a))
        scale = step ** k * math.factorial(k)
        return hi / scale, half / scale, rnd / scale

    d1, d2, d3 = (stencil(h / 2 ** i) for i in range(3))
    rich = [((4 * b[0] - a[0]) / 3, (4 * b[1] - a[1]) / 3) for a, b in ((d1, d2), (d2, d3))]
    value = rich[1][0]
    err = abs(rich[1][0] - rich[0][0]) + abs(rich[1][0] - rich[1][1]) + 2 * d3[2]
    return SumEstimate(value, err)
