from fractions import Fraction

import mpmath
import pytest

from newtonmzv.multiindex import MultiIndexError, multi_indices
from newtonmzv.newton import (NewtonSeries, abscissa, nabla_table_dual, nabla_table_exact,
                              newton_eval, newton_eval_int)
from newtonmzv.sequences import multi_harmonic

N = 10**5


def harmonic_oracle(z):
    return complex(mpmath.digamma(z + 1) + mpmath.euler)


def harmonic2_oracle(z):
    return complex(mpmath.zeta(2) - mpmath.psi(1, z + 1))


@pytest.mark.parametrize("alpha", multi_indices(5))
def test_difference_table_closed_form(alpha):
    assert nabla_table_exact(alpha, 14) == nabla_table_dual(alpha, 14)


@pytest.mark.parametrize("alpha", multi_indices(4))
def test_integer_interpolation_is_exact(alpha):
    for n in range(12):
        assert newton_eval_int(alpha, n) == multi_harmonic(alpha, n)


def test_abscissa():
    assert abscissa((1,)) == -1
    assert abscissa((2,)) == -1
    assert abscissa((1, 2)) == -2
    assert abscissa((1, 1, 2)) == -3


@pytest.mark.parametrize("z", [0.5, 1.5, 0.5 + 0.5j, -0.3, 3.25 - 1j])
def test_harmonic_numbers_continue_to_digamma(z):
    est = newton_eval((1,), z, N)
    expect = harmonic_oracle(z)
    assert abs(est.value - expect) <= est.err
    assert est.err < 1e-3


@pytest.mark.parametrize("z", [0.5, 1.5, 0.5 + 0.5j, -0.5 + 0j])
def test_second_order_harmonic_numbers(z):
    est = newton_eval((2,), z, N)
    assert abs(est.value - harmonic2_oracle(z)) <= est.err
    if z.real >= 0:
        assert est.err < 1e-5


def test_two_level_sum_oracle():
    # S_(1,1)(n) = (H_n^2 + H_n^(2)) / 2
    z = 0.7 + 0.2j
    est = newton_eval((1, 1), z, N)
    expect = (harmonic_oracle(z) ** 2 + harmonic2_oracle(z)) / 2
    assert abs(est.value - expect) <= est.err


def test_known_value_at_one_half():
    est = newton_eval((2,), 0.5, N)
    assert est.value.real == pytest.approx(0.7101318660, abs=1e-6)


def test_series_agrees_with_exact_values_at_integers():
    series = NewtonSeries((2, 1), 200)
    for n in (0, 3, 7):
        assert abs(series(n).value - float(multi_harmonic((2, 1), n))) < 1e-12


def test_rejects_outside_half_plane():
    with pytest.raises(ValueError):
        newton_eval((1, 2), -2.0, 1000)
    with pytest.raises(ValueError):
        newton_eval((2,), -1.5 + 1j, 1000)
    with pytest.raises(MultiIndexError):
        NewtonSeries((), 100)
    with pytest.raises(ValueError):
        NewtonSeries((1,), 4)


def test_table_is_read_only_and_exact_form_matches():
    series = NewtonSeries((1, 2), 40)
    with pytest.raises(ValueError):
        series.table[3] = 0.0
    exact = series.exact_table()
    assert all(abs(float(q) - x) < 1e-15 for q, x in zip(exact, series.table))
    assert exact[1] == Fraction(-1)
