"""Verification campaigns: interpolation, Newton series against nested series, MZV identities.

Each campaign returns a :class:`Report` whose cases carry both sides, both
error estimates, the pass flag and wall time.  A numeric case passes when

    |lhs - rhs| <= err_lhs + err_rhs + SLACK   and   |lhs - rhs| <= tol

Exact cases (rational on both sides) pass only on equality.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .estimate import SumEstimate, combine
from .multiindex import (IndexCombo, as_multi_index, backprime, circledast,
                         coarsen_sum, dual, dual_linear, format_combo,
                         format_multi_index, format_rational, multi_indices,
                         refine_sum, reverse, reverse_linear)
from .mzv import zeta_combo, zeta_plus
from .nested import PatternMatrix, g_derivative, g_eval, phi_eval, zeta_alpha_eval
from .newton import NewtonSeries, abscissa, newton_eval_int
from .sequences import multi_harmonic

SLACK = 1e-9
DEFAULT_TOL = 1e-4

Side = Union[SumEstimate, Fraction]


def _side_dict(side: Side) -> dict:
    if isinstance(side, Fraction):
        return {"re": float(side), "im": 0.0, "err": 0.0, "exact": format_rational(side)}
    return side.to_dict()


@dataclass
class Case:
    alpha: str
    aux: dict
    lhs: Side
    rhs: Side
    abs_diff: float
    passed: bool
    ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "alpha": self.alpha,
            "aux": self.aux,
            "lhs": _side_dict(self.lhs),
            "rhs": _side_dict(self.rhs),
            "abs_diff": self.abs_diff,
            "pass": self.passed,
            "ms": round(self.ms, 3) if timing else 0.0,
        }


@dataclass
class Report:
    command: str
    params: dict
    cases: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "cases": [c.to_dict(timing) for c in self.cases],
            "all_pass": self.all_pass,
        }


def exact_case(alpha, aux, lhs: Fraction, rhs: Fraction) -> Case:
    return Case(format_multi_index(alpha), aux, lhs, rhs, float(abs(lhs - rhs)), lhs == rhs)


def numeric_case(alpha, aux, lhs: Side, rhs: Side, tol: float = DEFAULT_TOL) -> Case:
    lv = complex(lhs) if isinstance(lhs, Fraction) else lhs.value
    rv = complex(rhs) if isinstance(rhs, Fraction) else rhs.value
    le = 0.0 if isinstance(lhs, Fraction) else lhs.err
    re_ = 0.0 if isinstance(rhs, Fraction) else rhs.err
    diff = abs(lv - rv)
    ok = diff <= le + re_ + SLACK and diff <= tol
    return Case(format_multi_index(alpha), aux, lhs, rhs, diff, bool(ok))


def _run(jobs: Sequence[Callable[[], Case]], threads: int = 1) -> list:
    def timed(job):
        t0 = time.perf_counter()
        case = job()
        case.ms = (time.perf_counter() - t0) * 1e3
        return case

    if threads <= 1:
        return [timed(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(timed, jobs))


def _zstr(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i"


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------

def check_interpolation(max_weight: int, max_n: int, M: int = 10**6, *,
                        numeric: bool = True, numeric_max_weight: Optional[int] = None,
                        numeric_max_n: Optional[int] = None, tol: float = DEFAULT_TOL,
                        threads: int = 1) -> Report:
    """Exact: ``F_alpha(n) == S_alpha(n)``.  Numeric: ``G_alpha(n) ~ S_{alpha backprime}(n)``."""
    if max_weight > 8:
        raise ValueError("max_weight must be <= 8")
    nw = max_weight if numeric_max_weight is None else numeric_max_weight
    nn = min(max_n, 6) if numeric_max_n is None else numeric_max_n
    params = {"max_weight": max_weight, "max_n": max_n, "trunc": M, "tol": tol,
              "numeric": numeric, "numeric_max_weight": nw, "numeric_max_n": nn}
    jobs = []
    for alpha in multi_indices(max_weight):
        for n in range(max_n + 1):
            jobs.append(lambda a=alpha, n=n: exact_case(
                a, {"part": "exact", "n": n}, newton_eval_int(a, n), multi_harmonic(a, n)))
    if numeric:
        for alpha in multi_indices(nw):
            bp = backprime(alpha)
            for n in range(nn + 1):
                jobs.append(lambda a=alpha, bp=bp, n=n: numeric_case(
                    a, {"part": "numeric", "n": n, "backprime": format_multi_index(bp)},
                    g_eval(a, n, M), multi_harmonic(bp, n), tol))
    return Report("interpolation", params, _run(jobs, threads))


# ---------------------------------------------------------------------------
# F_alpha = G_{alpha backprime}
# ---------------------------------------------------------------------------

def _newton_case(alpha, z: complex, series: NewtonSeries, M: int, tol: float) -> Case:
    bp = backprime(alpha)
    aux = {"z": _zstr(z), "backprime": format_multi_index(bp), "abscissa": abscissa(alpha)}
    F = series(z)
    G = g_eval(bp, z, M)
    return numeric_case(alpha, aux, F, G, tol)


def check_newton_vs_g(alpha, zs: Iterable[complex], N: int = 10**5, M: int = 10**6,
                       tol: float = DEFAULT_TOL, threads: int = 1) -> Report:
    """Compare the Newton series of alpha with ``G`` of its backprime at each z."""
    alpha = as_multi_index(alpha)
    zs = [complex(z) for z in zs]
    rho = abscissa(alpha)
    for z in zs:
        if not z.real > rho:
            raise ValueError(f"z = {_zstr(z)} lies outside Re z > {rho}")
    series = NewtonSeries(alpha, N)
    params = {"alpha": format_multi_index(alpha), "z": [_zstr(z) for z in zs],
              "terms": N, "trunc": M, "tol": tol}
    jobs = [lambda z=z: _newton_case(alpha, z, series, M, tol) for z in zs]
    return Report("theorem", params, _run(jobs, threads))


def check_newton_vs_g_campaign(alphas: Iterable, zs: Iterable[complex], N: int = 10**5,
                                M: int = 10**6, tol: float = DEFAULT_TOL,
                                threads: int = 1) -> Report:
    """Several alphas; z values below an alpha's abscissa are skipped, not failed."""
    alphas = [as_multi_index(a) for a in alphas]
    zs = [complex(z) for z in zs]
    params = {"alphas": [format_multi_index(a) for a in alphas], "z": [_zstr(z) for z in zs],
              "terms": N, "trunc": M, "tol": tol}
    jobs = []
    for alpha in alphas:
        series = None
        for z in zs:
            if not z.real > abscissa(alpha):
                continue
            series = series or NewtonSeries(alpha, N)
            jobs.append(lambda a=alpha, z=z, s=series: _newton_case(a, z, s, M, tol))
    return Report("theorem", params, _run(jobs, threads))


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def _combo_case(alpha, aux, plus: IndexCombo, minus: IndexCombo, M: int, tol: float) -> Case:
    aux = dict(aux, combo=format_combo(plus - minus))
    if plus - minus == IndexCombo():
        zero = SumEstimate(0.0, 0.0)
        return numeric_case(alpha, aux, zero, zero, tol)
    return numeric_case(alpha, aux, zeta_plus(plus, M), zeta_plus(minus, M), tol)


def check_duality(max_weight: int, M: int = 10**6, tol: float = DEFAULT_TOL,
                  threads: int = 1) -> Report:
    """``zeta+(dual(alpha)) = zeta+(reverse(alpha))``, and the same after applying d."""
    if max_weight > 6:
        raise ValueError("max_weight must be <= 6")
    params = {"max_weight": max_weight, "trunc": M, "tol": tol}
    jobs = []
    for alpha in multi_indices(max_weight):
        jobs.append(lambda a=alpha: _combo_case(
            a, {"family": "alpha"}, IndexCombo.basis(dual(a)), IndexCombo.basis(reverse(a)), M, tol))
    for alpha in multi_indices(max_weight):
        jobs.append(lambda a=alpha: _combo_case(
            a, {"family": "d(alpha)"}, dual_linear(coarsen_sum(a)),
            reverse_linear(coarsen_sum(a)), M, tol))
    return Report("duality", params, _run(jobs, threads))


# ---------------------------------------------------------------------------
# derivative formula
# ---------------------------------------------------------------------------

def block_exponents(alpha, ks: Sequence[int]) -> tuple:
    """``(k_1+1, 1, ..., 1, ..., k_s+1, 1, ..., 1)`` with block lengths alpha."""
    out = []
    for a, k in zip(alpha, ks):
        out.append(k + 1)
        out.extend([1] * (a - 1))
    return tuple(out)


def derivative_splits(s: int, k: int):
    """All ``(k_1, ..., k_s)`` summing to k with ``k_1 >= 1`` and the rest >= 0."""
    for k1 in range(1, k + 1):
        if s == 1:
            if k1 == k:
                yield (k1,)
            continue
        for rest in _weak_compositions(k - k1, s - 1):
            yield (k1,) + rest


def _weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def formula_lhs(alpha, k: int, M: int) -> SumEstimate:
    alpha = as_multi_index(alpha)
    return combine((1, zeta_alpha_eval(alpha, block_exponents(alpha, ks), M))
                   for ks in derivative_splits(len(alpha), k))


def formula_rhs_combo(alpha, k: int) -> IndexCombo:
    return circledast(coarsen_sum(reverse(alpha)), (1,) * k)


def check_formula(alpha, k: int, M: int = 10**6, tol: float = DEFAULT_TOL, *,
                  with_derivative: bool = True, h: float = 0.05) -> Report:
    """Sum of block-exponent ``zeta_alpha`` values against ``zeta(d(reverse) ⊛ (1,...,1))``.

    With ``with_derivative`` a second case compares the same sum with the
    signed Taylor coefficient of ``G_alpha`` at 0 obtained numerically.
    """
    alpha = as_multi_index(alpha)
    if not 1 <= k <= 3:
        raise ValueError("k must be in 1..3")
    if sum(alpha) > 4:
        raise ValueError("weight(alpha) must be <= 4")
    params = {"alpha": format_multi_index(alpha), "k": k, "trunc": M, "tol": tol}
    return Report("formula", params, _formula_cases(alpha, k, M, tol, with_derivative, h))


def _formula_cases(alpha, k, M, tol, with_derivative, h) -> list:
    jobs = []
    combo = formula_rhs_combo(alpha, k)
    aux = {"k": k, "relation": "zeta_alpha", "rhs_combo": format_combo(combo)}
    jobs.append(lambda: numeric_case(alpha, aux, formula_lhs(alpha, k, M),
                                     zeta_combo(combo, M), tol))
    if with_derivative:
        def deriv():
            d = g_derivative(alpha, k, M, h).scale((-1) ** (k - 1))
            return numeric_case(alpha, {"k": k, "relation": "G_taylor", "h": h},
                                d, formula_lhs(alpha, k, M), tol)
        jobs.append(deriv)
    return _run(jobs)


def check_formula_campaign(max_weight: int, ks: Iterable[int] = (1, 2), M: int = 10**6,
                           tol: float = DEFAULT_TOL, *, with_derivative: bool = True,
                           h: float = 0.05, threads: int = 1) -> Report:
    if max_weight > 4:
        raise ValueError("max_weight must be <= 4")
    ks = list(ks)
    params = {"max_weight": max_weight, "k": ks, "trunc": M, "tol": tol}
    groups = [lambda a=a, k=k: _formula_cases(a, k, M, tol, with_derivative, h)
              for a in multi_indices(max_weight) for k in ks]
    if threads <= 1:
        cases = [c for g in groups for c in g()]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cases = [c for g in pool.map(lambda g: g(), groups) for c in g]
    return Report("formula", params, cases)


# ---------------------------------------------------------------------------
# k = 1 specialisation
# ---------------------------------------------------------------------------

def _two_one_case(alpha, M: int, tol: float) -> Case:
    d_alpha = coarsen_sum(alpha)
    refine_dual = refine_sum(dual(alpha))
    rhs_combo = coarsen_sum(reverse(alpha))
    precheck = (refine_dual == dual_linear(d_alpha)
                and rhs_combo == reverse_linear(d_alpha))
    lhs = zeta_alpha_eval(alpha, (2,) + (1,) * (sum(alpha) - 1), M)
    rhs = zeta_plus(rhs_combo, M)
    refined = zeta_plus(refine_dual, M)
    aux = {
        "rhs_combo": format_combo(rhs_combo),
        "refined_combo": format_combo(refine_dual),
        "algebra_ok": precheck,
        "refined": refined.to_dict(),
        "refined_abs_diff": abs(lhs.value - refined.value),
    }
    case = numeric_case(alpha, aux, lhs, rhs, tol)
    refined_ok = numeric_case(alpha, {}, lhs, refined, tol).passed
    case.passed = case.passed and precheck and refined_ok
    return case


def check_two_one(max_weight: int, M: int = 10**6, tol: float = DEFAULT_TOL,
                threads: int = 1) -> Report:
    """``zeta_alpha(2,1,...,1) = zeta+(d(reverse(alpha)))`` and ``= zeta+(u(dual(alpha)))``.

    Before any numerics, ``u(dual(alpha)) == dual(d(alpha))`` and
    ``d(reverse(alpha)) == reverse(d(alpha))`` are checked as exact combos.
    """
    params = {"max_weight": max_weight, "trunc": M, "tol": tol}
    jobs = [lambda a=a: _two_one_case(a, M, tol) for a in multi_indices(max_weight)]
    return Report("two-one", params, _run(jobs, threads))


# ---------------------------------------------------------------------------
# pattern-matrix difference identity
# ---------------------------------------------------------------------------

def difference_matrices(gammas: Sequence[int], gammaps: Sequence[int]) -> tuple:
    """The four matrices ``(A, B, C, D)`` of the identity
    ``Phi_{n+1}(A - B) = Phi_{n+1}(C - D) / (n + 1)``.

    A links rows by ``>`` with ``>=`` inside; B swaps the two.  C lowers
    ``gamma_1`` of A by one; D lowers the last ``gamma'`` of B by one.
    """
    p = len(gammas)
    if p == 0 or len(gammaps) != p:
        raise ValueError("need matching, nonempty gamma lists")
    if gammas[0] < 2 or min(gammas) < 1 or min(gammaps) < 1:
        raise ValueError("need gamma_1 >= 2 and all other block lengths >= 1")
    a = [(None if i == 0 else ">", gammas[i], ">=", gammaps[i]) for i in range(p)]
    b = [(None if i == 0 else ">=", gammas[i], ">", gammaps[i]) for i in range(p)]
    c = [(None if i == 0 else ">", gammas[i] - (i == 0), ">=", gammaps[i]) for i in range(p)]
    d = [(None if i == 0 else ">=", gammas[i], ">", gammaps[i] - (i == p - 1)) for i in range(p)]
    return tuple(PatternMatrix(tuple(m)) for m in (a, b, c, d))


def _difference_case(gammas, gammaps, n: int, M: int, tol: float) -> Case:
    A, B, C, D = difference_matrices(gammas, gammaps)
    w = Fraction(1, n + 1)
    lhs = phi_eval([(1, A), (-1, B)], n + 1, M)
    rhs = phi_eval([(w, C), (-w, D)], n + 1, M)
    label = f"gamma={list(gammas)} gamma'={list(gammaps)}"
    aux = {"n": n, "A": A.to_json(), "B": B.to_json(), "C": C.to_json(), "D": D.to_json()}
    case = numeric_case((), aux, lhs, rhs, tol)
    case.alpha = label
    return case


def check_phi_difference(max_rows: int = 2, max_gamma: int = 2, max_n: int = 2,
                         M: int = 10**6, tol: float = DEFAULT_TOL, threads: int = 1) -> Report:
    """Grid check of the difference identity over rows, block lengths and n."""
    params = {"max_rows": max_rows, "max_gamma": max_gamma, "max_n": max_n,
              "trunc": M, "tol": tol}
    jobs = []
    for p in range(1, max_rows + 1):
        for gammas in itertools.product(range(2, max_gamma + 1),
                                        *[range(1, max_gamma + 1)] * (p - 1)):
            for gammaps in itertools.product(range(1, max_gamma + 1), repeat=p):
                for n in range(max_n + 1):
                    jobs.append(lambda g=gammas, gp=gammaps, n=n:
                                _difference_case(g, gp, n, M, tol))
    return Report("phi-difference", params, _run(jobs, threads))
