import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from snfy.operators import build_A_h_basis, build_M_k_h_basis, char_poly_formula
from snfy.polymat import int_det
from snfy.zsnf import IntSnf, eigen_multiset, int_snf, specialize_and_check

int_matrices = st.integers(1, 5).flatmap(
    lambda d: st.lists(st.lists(st.integers(-20, 20), min_size=d, max_size=d), min_size=d, max_size=d)
)


def test_examples():
    assert int_snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diag == (2, 6, 12)
    assert int_snf([[0, 0], [0, 0]]).diag == (0, 0)
    assert int_snf([[6, 0], [0, 4]]).diag == (2, 12)
    assert int_snf([[1, 2, 3], [4, 5, 6]]).diag == (1, 3)
    assert IntSnf((1, 2, 6)).is_chain() and not IntSnf((2, 3)).is_chain()


@settings(max_examples=150)
@given(int_matrices)
def test_product_is_abs_det(rows):
    snf = int_snf(rows)
    assert snf.is_chain()
    product = 1
    for d in snf.diag:
        product *= d
    assert product == abs(int_det(rows))


@settings(max_examples=60)
@given(int_matrices)
def test_matches_sympy(rows):
    expected = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    diag = sorted(abs(expected[i, i]) for i in range(len(rows)))
    nonzero = sorted(d for d in int_snf(rows).diag if d)
    assert nonzero == [d for d in diag if d]


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 9) for k in range(1, n + 1)])
def test_eigen_multiset_are_roots(n, k):
    x = sympy.Symbol("x")
    expr = sum(c * x**i for i, c in enumerate(char_poly_formula(n, k).coeffs))
    roots = sympy.roots(sympy.Poly(expr, x))
    assert sorted(-r for r, mult in roots.items() for _ in range(mult)) == sorted(eigen_multiset(n, k))


@pytest.mark.parametrize("n", range(1, 8))
def test_eigenvalues_of_integer_matrix(n):
    m = sympy.Matrix(build_A_h_basis(n).evaluate(0))
    eig = sorted(v for v, mult in m.eigenvals().items() for _ in range(mult))
    assert eig == sorted(eigen_multiset(n, 1))


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 11) for k in (1, 2) if k <= n])
@pytest.mark.parametrize("c", [0, 1, 2, 5, -7])
def test_specialization(n, k, c):
    report = specialize_and_check(n, k, c)
    assert report.match, (report.lhs, report.rhs)
    assert report.to_json()["match"]


def test_random_specialization_points():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(2, 8)
        k = rng.randint(1, n)
        c = rng.randint(-30, 30)
        assert specialize_and_check(n, k, c).match


def test_h_matrix_specialization_k2_directly():
    m = build_M_k_h_basis(4, 2).evaluate(0)
    assert int_snf(m).diag == specialize_and_check(4, 2, 0).rhs
