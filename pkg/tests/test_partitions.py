from itertools import product

import pytest
from hypothesis import given, strategies as st

from snfy.partitions import (
    conjugate_of,
    dominance_gt,
    enumerate_partitions,
    full_string_of,
    is_initial,
    is_partition,
    is_terminal,
    m_k,
    minus_op,
    partition_count,
    plus_op,
    shape_lambda_n,
    string_decomposition,
    string_order,
)


def brute_partitions(n):
    """Partitions of n by filtering all weakly decreasing compositions."""
    out = set()

    def rec(rem, prefix):
        if rem == 0:
            out.add(tuple(prefix))
            return
        for part in range(1, rem + 1):
            rec(rem - part, prefix + [part])

    rec(n, [])
    return {tuple(sorted(c, reverse=True)) for c in out}


def test_small_counts():
    assert [partition_count(n) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@pytest.mark.parametrize("n", range(1, 13))
def test_enumeration_against_brute_force(n):
    parts = enumerate_partitions(n)
    assert set(parts) == brute_partitions(n)
    assert len(parts) == partition_count(n)
    assert list(parts) == sorted(parts, reverse=True)


def test_partition_count_large():
    assert partition_count(100) == 190569292


def test_multiplicities_and_conjugate():
    assert m_k((3, 1, 1), 1) == 2
    assert m_k((3, 1, 1), 2) == 0
    assert conjugate_of((4, 2, 1)) == (3, 2, 1, 1)
    assert conjugate_of(()) == ()


@given(st.integers(1, 14).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_conjugation_is_an_involution(lam):
    assert conjugate_of(conjugate_of(lam)) == lam
    assert sum(conjugate_of(lam)) == sum(lam)


def test_dominance_examples():
    assert not dominance_gt((3, 1, 1, 1), (2, 2, 2))
    assert not dominance_gt((2, 2, 2), (3, 1, 1, 1))
    assert dominance_gt((3, 3), (2, 2, 2))
    assert not dominance_gt((2, 2), (2, 2))
    with pytest.raises(ValueError):
        dominance_gt((2,), (1,))


def test_initial_terminal_conventions():
    assert is_initial((1,)) and is_terminal((1,))
    assert is_initial(()) and is_terminal(())
    assert is_initial((2, 2, 1)) and not is_initial((3, 2))
    assert is_terminal((3, 2)) and not is_terminal((3, 1))


def test_plus_and_minus_examples():
    assert plus_op((2, 1, 1)) == (3, 1)
    assert minus_op((3, 1)) == (2, 1, 1)
    with pytest.raises(ValueError):
        plus_op((1,))
    with pytest.raises(ValueError):
        plus_op((3, 2))
    with pytest.raises(ValueError):
        minus_op((2, 2))


@given(st.integers(2, 16).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_plus_minus_inverse(lam):
    if not is_terminal(lam):
        assert minus_op(plus_op(lam)) == lam
    if not is_initial(lam):
        assert plus_op(minus_op(lam)) == lam


def test_string_decomposition_n6():
    sd = string_decomposition(6)
    assert [s.elements for s in sd.strings] == [
        ((6,), (5, 1), (4, 1, 1), (3, 1, 1, 1), (2, 1, 1, 1, 1), (1,) * 6),
        ((4, 2), (3, 2, 1), (2, 2, 1, 1)),
        ((3, 3),),
        ((2, 2, 2),),
    ]
    assert sd.cardinalities == (6, 3, 1, 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_strings_partition_the_set(n):
    sd = string_decomposition(n)
    order = sd.order
    assert sorted(order) == sorted(enumerate_partitions(n))
    assert len(set(order)) == len(order)
    for s in sd.strings:
        assert is_terminal(s.terminal) and is_initial(s.initial)
        for a, b in zip(s.elements, s.elements[1:]):
            assert plus_op(b) == a
        for lam in s.elements:
            assert full_string_of(lam) == s
    # terminals in descending lex order
    terms = [s.terminal for s in sd.strings]
    assert terms == sorted(terms, reverse=True)
    if n >= 2:
        assert sd.t == partition_count(n) - partition_count(n - 1)
    _, index = string_order(n)
    assert all(index[lam] == i for i, lam in enumerate(order))


@pytest.mark.parametrize("n", range(1, 31))
def test_cardinalities_are_conjugate_of_shape(n):
    shape = shape_lambda_n(n)
    assert is_partition(shape.shape) and sum(shape.shape) == partition_count(n)
    assert tuple(sorted(string_decomposition(n).cardinalities, reverse=True)) == shape.conjugate


def test_shape_lambda_6():
    s = shape_lambda_n(6)
    assert s.shape == (4, 2, 2, 1, 1, 1)
    assert s.conjugate == (6, 3, 1, 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_dominance_is_strict_partial_order(n):
    parts = enumerate_partitions(n)
    rel = {(a, b): dominance_gt(a, b) for a, b in product(parts, parts)}
    for a in parts:
        assert not rel[a, a]
    for a, b in product(parts, parts):
        if rel[a, b]:
            assert not rel[b, a]
            # dominance refines into lex
            assert a > b
    if n <= 8:
        for a, b, c in product(parts, parts, parts):
            if rel[a, b] and rel[b, c]:
                assert rel[a, c]
