import mpmath
import pytest

from newtonmzv.multiindex import (IndexCombo, MultiIndexError, compositions, parse_combo,
                                  stuffle)
from newtonmzv.mzv import zeta_combo, zeta_eval, zeta_plus

Z = {k: float(mpmath.zeta(k)) for k in (2, 3, 4, 6)}

# closed forms for small depth-2+ values
KNOWN = {
    (2,): Z[2],
    (3,): Z[3],
    (2, 1): Z[3],
    (2, 1, 1): Z[4],
    (3, 1): Z[4] / 4,
    (2, 2): 3 * Z[4] / 4,
    (2, 1, 1, 1, 1): Z[6],
}


@pytest.mark.parametrize("mu, expected", sorted(KNOWN.items()))
def test_closed_forms(mu, expected):
    est = zeta_eval(mu)
    assert abs(est.value - expected) <= est.err + 1e-12
    assert abs(est.value - expected) < 1e-8


def admissible_up_to(w):
    return [a for m in range(2, w + 1) for a in compositions(m) if a[0] >= 2]


@pytest.mark.parametrize("mu, nu", [(a, b) for a in admissible_up_to(4)
                                    for b in admissible_up_to(4) if a <= b])
def test_stuffle_product(mu, nu):
    a, b = zeta_eval(mu), zeta_eval(nu)
    prod = a.value * b.value
    prod_err = abs(a.value) * b.err + abs(b.value) * a.err
    rhs = zeta_combo(stuffle(mu, nu))
    assert abs(prod - rhs.value) <= prod_err + rhs.err + 1e-9


def test_combo_linearity():
    v = parse_combo("(3,1) + (2,2)")
    est = zeta_combo(v)
    assert abs(est.value - Z[4]) <= est.err + 1e-12
    assert zeta_combo(IndexCombo()).value == 0 and zeta_combo(IndexCombo()).err == 0
    assert abs(zeta_combo(parse_combo("2*(3)")).value - 2 * Z[3]) < 1e-12


def test_zeta_plus():
    assert abs(zeta_plus((2,)).value - Z[3]) < 1e-12
    euler = zeta_plus(parse_combo("(1,1) - (2)"))
    assert abs(euler.value) <= euler.err + 1e-12


def test_positive():
    for mu in admissible_up_to(5):
        assert zeta_eval(mu).value.real > 0


def test_rejections():
    with pytest.raises(MultiIndexError):
        zeta_eval((1, 2))
    with pytest.raises(MultiIndexError):
        zeta_combo(parse_combo("(2) + (1,1)"))
    with pytest.raises(MultiIndexError):
        zeta_plus(IndexCombo.basis(()))
