from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonmzv.multiindex import (IndexCombo, MultiIndexError, as_multi_index, backprime,
                                  circledast, coarsen_inverse, coarsen_linear, coarsen_sum,
                                  compositions, concat, decode_subset, drop_left, drop_right,
                                  dual, dual_linear, encode_subset, format_combo,
                                  format_multi_index, is_admissible, multi_indices,
                                  parse_combo, parse_multi_index, raise_first, refine_linear,
                                  refine_sum, reverse, stuffle, weight)


def multi_index(max_part=4, max_len=5):
    return st.lists(st.integers(1, max_part), min_size=1, max_size=max_len).map(tuple)


def combo(*pairs):
    return IndexCombo({a: Fraction(c) for a, c in pairs})


def test_subset_encoding_weight_three():
    assert encode_subset((3,)) == frozenset()
    assert encode_subset((1, 2)) == {1}
    assert encode_subset((2, 1)) == {2}
    assert encode_subset((1, 1, 1)) == {1, 2}


@pytest.mark.parametrize("alpha, expected", [
    ((2, 2), (1, 2, 1)),
    ((1, 1, 2), (3, 1)),
    ((4,), (1, 1, 1, 1)),
    ((3,), (1, 1, 1)),
    ((1, 2), (2, 1)),
    ((2, 1), (1, 2)),
    ((1, 1, 1), (3,)),
    ((1,), (1,)),
])
def test_dual_fixtures(alpha, expected):
    assert dual(alpha) == expected


def test_backprime_examples():
    assert backprime((2,)) == (1, 1)
    assert backprime((2, 2)) == (1, 2, 1)
    assert backprime((1, 1, 3, 1)) == reverse(dual((1, 1, 3, 1)))


def test_drops_and_raise():
    assert drop_left((3, 1)) == (2, 1)
    assert drop_left((1, 2)) == (2,)
    assert drop_right((1, 3)) == (1, 2)
    assert drop_right((2, 1)) == (2,)
    assert raise_first((1, 2)) == (2, 2)


def test_u_and_d_fixtures():
    assert refine_sum((1, 3)) == parse_combo("(1,3) + (1,2,1) + (1,1,2) + (1,1,1,1)")
    assert coarsen_sum((1, 2, 3)) == parse_combo("(1,2,3) + (3,3) + (1,5) + (6)")


@pytest.mark.parametrize("m", range(1, 9))
def test_d_inverse_is_inverse(m):
    for alpha in compositions(m):
        assert coarsen_linear(coarsen_inverse(alpha)) == IndexCombo.basis(alpha)


def test_multi_indices_count_and_order():
    idx = multi_indices(5)
    assert len(idx) == 31
    assert idx[:4] == [(1,), (1, 1), (2,), (1, 1, 1)]
    assert multi_indices(3, min_weight=3) == [(1, 1, 1), (1, 2), (2, 1), (3,)]


@given(multi_index())
def test_dual_is_weight_preserving_involution(alpha):
    star = dual(alpha)
    assert weight(star) == weight(alpha)
    assert len(star) + len(alpha) == weight(alpha) + 1
    assert dual(star) == alpha
    assert decode_subset(weight(alpha), encode_subset(alpha)) == alpha


@given(multi_index())
def test_dual_commutes_with_reverse(alpha):
    assert dual(reverse(alpha)) == reverse(dual(alpha))


@given(multi_index().filter(lambda a: weight(a) >= 2))
def test_drop_identities(alpha):
    assert dual(drop_right(alpha)) == drop_right(dual(alpha))
    assert dual(drop_left(alpha)) == drop_left(dual(alpha))
    assert reverse(drop_right(alpha)) == drop_left(reverse(alpha))
    assert backprime(drop_right(alpha)) == drop_left(backprime(alpha))


@given(multi_index(max_len=4))
def test_dual_intertwines_d_and_u(alpha):
    assert dual_linear(coarsen_sum(alpha)) == refine_linear(IndexCombo.basis(dual(alpha)))


@given(multi_index(3, 3), multi_index(3, 3))
def test_stuffle_commutative(a, b):
    assert stuffle(a, b) == stuffle(b, a)


@settings(max_examples=40)
@given(multi_index(3, 2), multi_index(3, 2), multi_index(3, 2))
def test_stuffle_associative(a, b, c):
    assert stuffle(stuffle(a, b), c) == stuffle(a, stuffle(b, c))


@given(multi_index(3, 3), multi_index(3, 3))
def test_stuffle_preserves_weight(a, b):
    assert all(weight(k) == weight(a) + weight(b) for k in stuffle(a, b))


def test_stuffle_examples():
    assert stuffle((1,), (1,)) == combo(((1, 1), 2), ((2,), 1))
    assert stuffle((2,), (1,)) == combo(((2, 1), 1), ((1, 2), 1), ((3,), 1))
    assert stuffle((), (2, 1)) == IndexCombo.basis((2, 1))


def test_circledast_merges_heads():
    assert circledast((2,), (1,)) == IndexCombo.basis((3,))
    assert circledast((1, 1), (1,)) == combo(((2, 1), 1))
    assert circledast((2,), (1, 1)) == combo(((3, 1), 1))
    assert circledast((1, 2), (1, 1)) == stuffle((2,), (1,)).map(lambda k: (2,) + k)


def test_combo_arithmetic():
    v = parse_combo("2*(1,1) - 1/2*(3)")
    assert v[(1, 1)] == 2 and v[(3,)] == Fraction(-1, 2)
    assert v - v == IndexCombo()
    assert sum([v, v]) == v * 2
    assert format_combo(IndexCombo()) == "0"


@given(multi_index())
def test_text_round_trip(alpha):
    assert parse_multi_index(format_multi_index(alpha)) == alpha


@given(st.dictionaries(multi_index(3, 3), st.fractions(max_denominator=7), max_size=4))
def test_combo_text_round_trip(terms):
    v = IndexCombo(terms)
    assert parse_combo(format_combo(v)) == v


@pytest.mark.parametrize("bad", ["(0,1)", "(1,-2)", "(a)", "1,,2", "(1.5)"])
def test_malformed_multi_index_rejected(bad):
    with pytest.raises(MultiIndexError):
        parse_multi_index(bad)


def test_domain_errors():
    with pytest.raises(MultiIndexError):
        dual(())
    with pytest.raises(MultiIndexError):
        as_multi_index([1, 0])
    assert parse_multi_index("()") == ()
    assert is_admissible((2, 1)) and not is_admissible((1, 2))
    assert concat((1,), (2, 3)) == (1, 2, 3)
