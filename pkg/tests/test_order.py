import pytest
from hypothesis import given, strategies as st

from semnav.order import (EQUAL, GREATER, LESS, UNREACHED, OrderMode, add,
                          compare, one_hot, sort_key, top_key, zero)

TOP = OrderMode.TOP_CLASS
LEX = OrderMode.FULL_LEX


def test_one_hot():
    assert one_hot(2, 3) == (0, 1, 0)
    assert one_hot(1, 1) == (1,)
    assert one_hot(3, 3) == (0, 0, 1)


def test_one_hot_out_of_range():
    with pytest.raises(ValueError):
        one_hot(0, 3)
    with pytest.raises(ValueError):
        one_hot(4, 3)


def test_add():
    assert add((1, 0, 0), (0, 0, 1)) == (1, 0, 1)
    assert add((0, 0, 0), (2, 1, 3)) == (2, 1, 3)
    assert add(UNREACHED, (1, 0, 0)) is UNREACHED
    assert add((1, 0, 0), UNREACHED) is UNREACHED


def test_add_length_mismatch():
    with pytest.raises(ValueError):
        add((1, 0), (1, 0, 0))


def test_compare_paper_order():
    # a lower top class beats any count of it
    assert compare((5, 0, 0), (0, 1, 0), TOP) == LESS
    # same top class: fewer edges of it wins
    assert compare((3, 1, 0), (0, 2, 0), TOP) == LESS
    # empty path precedes any nonempty path
    assert compare((0, 0, 0), (1, 0, 0), TOP) == LESS


def test_compare_modes_differ_below_top():
    assert compare((4, 1, 0), (0, 1, 0), TOP) == EQUAL
    assert compare((4, 1, 0), (0, 1, 0), LEX) == GREATER


def test_unreached_comparisons():
    assert compare((9, 9, 9), UNREACHED, TOP) == LESS
    assert compare(UNREACHED, (0, 0, 0), TOP) == GREATER
    assert compare(UNREACHED, UNREACHED, TOP) == EQUAL


def test_top_key():
    assert top_key((0, 0, 0)) == (0, 0)
    assert top_key((3, 0, 0)) == (1, 3)
    assert top_key((4, 1, 0)) == (2, 1)


vectors = st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=5).map(tuple)
pairs = st.integers(min_value=1, max_value=5).flatmap(
    lambda k: st.tuples(
        st.lists(st.integers(0, 10), min_size=k, max_size=k).map(tuple),
        st.lists(st.integers(0, 10), min_size=k, max_size=k).map(tuple),
        st.lists(st.integers(0, 10), min_size=k, max_size=k).map(tuple),
        st.integers(1, k),
    )
)


@given(pairs, st.sampled_from([TOP, LEX]))
def test_compare_is_total_and_transitive(data, mode):
    a, b, c, _ = data
    assert compare(a, a, mode) == EQUAL
    assert compare(a, b, mode) == -compare(b, a, mode)
    if compare(a, b, mode) != GREATER and compare(b, c, mode) != GREATER:
        assert compare(a, c, mode) != GREATER


@given(pairs)
def test_extension_monotone(data):
    a, b, c_unused, k = data
    e = one_hot(k, len(a))
    if compare(a, b, TOP) == LESS:
        assert compare(add(a, e), add(b, e), TOP) in (LESS, EQUAL)
    if compare(a, b, LEX) == LESS:
        assert compare(add(a, e), add(b, e), LEX) == LESS


@given(pairs, st.sampled_from([TOP, LEX]))
def test_sort_key_realizes_compare(data, mode):
    a, b, _, _ = data
    cmp_by_key = (sort_key(a, mode) > sort_key(b, mode)) - (sort_key(a, mode) < sort_key(b, mode))
    assert cmp_by_key == compare(a, b, mode)


def test_zero():
    assert zero(4) == (0, 0, 0, 0)
    assert compare(zero(3), one_hot(1, 3), TOP) == LESS
