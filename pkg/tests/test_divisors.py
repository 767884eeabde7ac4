from itertools import product as cartesian

import pytest
from hypothesis import given, strategies as st

from conftest import lin, prod
from snfy.divisors import (
    border_strip_count,
    check_conjecture,
    conjecture_diagonal,
    cumulative_products,
    determinantal_ladder,
    operator_matrix,
    proposition_diagonal,
)
from snfy.operators import char_poly_formula
from snfy.partitions import enumerate_partitions, m_k, partition_count
from snfy.polymat import PolyMatrix, determinant
from snfy.polyzx import ONE, PolyZx
from snfy.smith import theorem_diagonal


def rim_hooks(lam, k):
    """Brute force: sub-partitions mu with |lam/mu| = k, lam/mu connected, no 2x2 block."""
    count = 0
    for mu in cartesian(*[range(part + 1) for part in lam]):
        if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
            continue
        cells = {(r, c) for r, part in enumerate(lam) for c in range(mu[r], part)}
        if len(cells) != k:
            continue
        if any({(r, c), (r + 1, c), (r, c + 1), (r + 1, c + 1)} <= cells for r, c in cells):
            continue
        start = next(iter(cells))
        seen, stack = {start}, [start]
        while stack:
            r, c = stack.pop()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        count += len(seen) == k
    return count


def test_peel_example():
    d = conjecture_diagonal(6, 2)
    x2, x4, x6, x8 = lin(2), lin(4), lin(6), lin(8)
    assert d.entries == (ONE,) * 5 + (x2,) * 3 + (x2 * x4,) * 2 + (x2 * x4 * x6 * x8,)
    assert d.peel_trace[0] == (0, 1, 2, 3)
    assert d.is_chain()


@pytest.mark.parametrize("n", range(1, 13))
def test_peel_for_k1_is_the_theorem_diagonal_shape(n):
    # for k = 1 the peeled diagonal has the same determinant as the Smith form
    d = conjecture_diagonal(n, 1)
    assert prod(d.entries) == prod(theorem_diagonal(n))
    assert len(d.entries) == partition_count(n)


@pytest.mark.parametrize("n", range(1, 13))
def test_peel_determinant_and_chain(n):
    for k in range(1, n + 1):
        d = conjecture_diagonal(n, k)
        assert prod(d.entries) == char_poly_formula(n, k)
        assert d.is_chain()
        assert all(b.divisible_by(a) for a, b in zip(d.entries, d.entries[1:]))


def test_proposition_examples():
    x3, x6 = lin(3), lin(6)
    assert proposition_diagonal(5, 3) == (ONE,) * 2 + (x3,) * 3 + (x3 * x6,) * 2
    assert proposition_diagonal(2, 2) == (ONE, lin(2) * lin(4))
    with pytest.raises(ValueError):
        proposition_diagonal(4, 2)
    with pytest.raises(ValueError):
        proposition_diagonal(1, 1)


@pytest.mark.parametrize("n", range(2, 13))
def test_proposition_agrees_with_peel(n):
    for k in range(n // 2 + 1, n + 1):
        assert proposition_diagonal(n, k) == conjecture_diagonal(n, k).entries


@pytest.mark.parametrize("n", range(1, 9))
def test_border_strips_against_rim_hook_oracle(n):
    for lam in enumerate_partitions(n):
        for k in range(1, n + 1):
            assert border_strip_count(lam, k) == rim_hooks(lam, k)


@pytest.mark.parametrize("n", range(1, 15))
def test_at_most_one_strip_iff_k_large(n):
    for k in range(1, n + 1):
        most = max(border_strip_count(lam, k) for lam in enumerate_partitions(n))
        if 2 * k > n:
            assert most <= 1
        elif (n, k) != (2, 1):
            assert most >= 2


def test_strip_uniqueness_exception_n2():
    # both partitions of 2 have a single removable cell although k = 1 = n/2
    assert [border_strip_count(lam, 1) for lam in enumerate_partitions(2)] == [1, 1]


def test_ladder_n2():
    ladder = determinantal_ladder(operator_matrix(2, 1), theorem_diagonal(2), n=2, k=1)
    assert ladder.D == [ONE, lin(1) * lin(3)]
    assert ladder.status == ["match", "match"]
    assert ladder.quotients == list(theorem_diagonal(2))
    assert ladder.complete


def test_ladder_identity_and_diagonal():
    eye = PolyMatrix.identity(4)
    assert determinantal_ladder(eye).D == [ONE] * 4
    diag = (ONE, lin(1), lin(1) * lin(2), lin(1) * lin(2) * lin(5))
    ladder = determinantal_ladder(PolyMatrix.diagonal(tuple(reversed(diag))), diag)
    assert ladder.status == ["match"] * 4
    assert ladder.quotients == list(diag)


def test_ladder_detects_wrong_target():
    wrong = (ONE, ONE, lin(1) * lin(3))
    ladder = determinantal_ladder(operator_matrix(3, 1), wrong)
    assert "mismatch" in ladder.status


@pytest.mark.parametrize("n", range(1, 6))
def test_ladder_last_level_is_determinant(n):
    m = operator_matrix(n, 1)
    ladder = determinantal_ladder(m)
    assert ladder.D[-1] == determinant(m)
    assert tuple(ladder.quotients) == theorem_diagonal(n)


def test_budget_forces_sampling():
    ladder = determinantal_ladder(operator_matrix(6, 1), theorem_diagonal(6), minor_budget=200)
    assert not ladder.complete
    assert "sampled" in ladder.status
    assert "mismatch" not in ladder.status and "refuted" not in ladder.status


def test_size_cap_skips_levels():
    ladder = determinantal_ladder(operator_matrix(4, 1), size_cap=2)
    assert ladder.status[2:] == ["skipped"] * 3


def test_parallel_matches_serial():
    m = operator_matrix(6, 2)
    assert determinantal_ladder(m, threads=2).D == determinantal_ladder(m, threads=1).D


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 6) for k in range(2, n + 1)])
def test_conjecture_confirmed_small(n, k):
    report = check_conjecture(n, k)
    assert report["verdict"] == "confirmed"
    assert report["determinant_consistent"]
    if 2 * k > n:
        assert report["proposition"] == "agree"


@given(st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_cumulative_products(vals):
    diag = [lin(v + 1) for v in vals]
    cum = cumulative_products(diag)
    assert cum[-1] == prod(diag)
    assert all(b.divisible_by(a) for a, b in zip(cum, cum[1:]))


def test_m_k_values_used_by_peel():
    assert sorted(m_k(lam, 2) for lam in enumerate_partitions(4)) == [0, 0, 0, 1, 2]
