from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from insdel_lab.errors import DimensionError, FieldMismatchError
from insdel_lab.galois import field_from_order, field_new
from insdel_lab.linalg import (
    FqMatrix,
    column_rank,
    column_submatrix,
    hstack,
    mat_vec,
    matmul,
    null_space,
    parity_check,
    rank,
    rref,
    row_basis,
    solve,
    vec_mat,
    vstack,
)
from oracles import RefField, ref_rank


def _random_matrix(rng, F, rows, cols):
    return FqMatrix.from_rows(F, [[rng.randrange(F.q) for _ in range(cols)] for _ in range(rows)], cols)


def _ref(F):
    return RefField(F.p, F.m, F.modulus)


def test_rref_textbook_example_gf2():
    F = field_new(2)
    M = FqMatrix.from_rows(F, [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 0]])
    R, piv = rref(M)
    assert piv == [0, 1]
    assert R.to_rows() == [(1, 0, 1, 1), (0, 1, 1, 0), (0, 0, 0, 0)]


def test_rref_gf3_scaling():
    F = field_new(3)
    M = FqMatrix.from_rows(F, [[2, 1], [1, 2]])
    R, piv = rref(M)
    assert R.to_rows() == [(1, 2), (0, 0)]
    assert piv == [0]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_rank_matches_reference(q):
    F = field_from_order(q)
    rng = random.Random(q)
    for _ in range(40):
        M = _random_matrix(rng, F, rng.randint(1, 5), rng.randint(1, 7))
        assert rank(M) == ref_rank(_ref(F), M.to_rows())
        assert column_rank(F, [M.col(j) for j in range(M.cols)]) == rank(M)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_null_space_is_complete(q):
    F = field_from_order(q)
    rng = random.Random(10 + q)
    for _ in range(20):
        M = _random_matrix(rng, F, rng.randint(1, 3), rng.randint(1, 5))
        N = null_space(M)
        assert N.rows == M.cols - rank(M)
        for v in N.to_rows():
            assert not any(mat_vec(F, M, v))
        # brute force: the null space has exactly q^dim vectors
        count = sum(1 for v in itertools.product(range(q), repeat=M.cols) if not any(mat_vec(F, M, v)))
        assert count == q**N.rows


def test_solve_consistent_and_inconsistent():
    F = field_new(5)
    M = FqMatrix.from_rows(F, [[1, 2, 0], [0, 1, 3]])
    x = solve(M, [4, 1])
    assert mat_vec(F, M, x) == (4, 1)
    assert x[2] == 0  # free variable set to zero
    dep = FqMatrix.from_rows(F, [[1, 1], [2, 2]])
    assert solve(dep, [1, 3]) is None
    with pytest.raises(DimensionError):
        solve(M, [1])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_parity_check_annihilates(seed):
    rng = random.Random(seed)
    F = field_from_order(rng.choice([2, 3, 4]))
    n = rng.randint(2, 7)
    k = rng.randint(1, n)
    while True:
        G = _random_matrix(rng, F, k, n)
        if rank(G) == k:
            break
    H = parity_check(G)
    assert H.rows == n - k
    assert rank(H) == n - k if n > k else H.rows == 0
    assert matmul(G, H.T).is_zero()


def test_parity_check_needs_full_rank():
    F = field_new(2)
    with pytest.raises(DimensionError):
        parity_check(FqMatrix.from_rows(F, [[1, 1], [1, 1]]))


def test_products_and_stacks():
    F = field_new(3)
    A = FqMatrix.from_rows(F, [[1, 2], [0, 1]])
    I = FqMatrix.identity(F, 2)
    assert matmul(A, I) == A
    assert vec_mat(F, (1, 1), A) == (1, 0)
    assert hstack(A, I).cols == 4
    assert vstack(A, I).rows == 4
    assert column_submatrix(A, [1]).to_rows() == [(2,), (1,)]
    assert row_basis(vstack(A, A)).rows == 2
    with pytest.raises(DimensionError):
        column_submatrix(A, [2])
    with pytest.raises(FieldMismatchError):
        matmul(A, FqMatrix.identity(field_new(2), 2))


def test_matrix_validation():
    F = field_new(2)
    with pytest.raises(DimensionError):
        FqMatrix.from_rows(F, [[1, 0], [1]])
    with pytest.raises(DimensionError):
        FqMatrix.from_rows(F, [[2]])
    assert FqMatrix.zeros(F, 2, 3).is_zero()
