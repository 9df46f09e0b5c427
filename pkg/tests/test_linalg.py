from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cbpoints.errors import DimensionMismatch
from cbpoints.linalg import (Matrix, bareiss_echelon, det, identity, in_row_span, inverse,
                             kernel_basis, rank, rref)
from cbpoints.scalar import RATIONALS, FieldSpec, Rng
from oracles import det_leibniz, rank_fraction, rank_mod_p

F = FieldSpec(32003)


def small_matrices(p=32003, max_rows=7, max_cols=9, hi=None):
    hi = p - 1 if hi is None else hi
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda rows: (rows, c))))


def test_rank_examples():
    assert rank(identity(4, F)) == 4
    assert rank(Matrix([[1, 2], [2, 4]], FieldSpec(7))) == 1
    rng = Rng(11)
    A = Matrix([[rng.below(F.p) for _ in range(3)] for _ in range(5)], F)
    B = Matrix([[rng.below(F.p) for _ in range(9)] for _ in range(3)], F)
    assert rank(A) == 3 and rank(B) == 3
    assert rank(A @ B) == 3
    assert rank(Matrix([], F, cols=4)) == 0


def test_kernel_examples():
    F5 = FieldSpec(5)
    ker = kernel_basis(Matrix([[1, 1, 1]], F5))
    assert len(ker) == 2
    assert all(sum(v) % 5 == 0 for v in ker)
    assert kernel_basis(identity(3, F)) == []


def test_in_row_span_examples():
    M = Matrix([[1, 0]], F)
    assert in_row_span(M, [0, 0])
    assert not in_row_span(M, [0, 1])
    with pytest.raises(DimensionMismatch):
        in_row_span(M, [1, 0, 0])


@settings(max_examples=150)
@given(small_matrices())
def test_rank_matches_oracle_and_kernel(data):
    rows, c = data
    M = Matrix(rows, F, cols=c)
    r = rank(M)
    assert r == rank_mod_p(rows, F.p) if rows else r == 0
    assert r <= min(len(rows), c)
    ker = kernel_basis(M)
    assert r + len(ker) == c
    for v in ker:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) % F.p == 0
    if rows:
        assert rank(M.transpose()) == r


@settings(max_examples=80)
@given(small_matrices(max_rows=5, max_cols=5, hi=6), st.integers(0, 10**6))
def test_rank_invariant_under_row_ops(data, seed):
    rows, c = data
    if not rows:
        return
    rng = Rng(seed)
    order = rng.shuffle(list(range(len(rows))))
    scales = [rng.nonzero(F.p) for _ in rows]
    scaled = [[scales[i] * x for x in rows[i]] for i in order]
    assert rank(Matrix(scaled, F)) == rank(Matrix(rows, F))


@settings(max_examples=80)
@given(small_matrices(max_rows=5, max_cols=6, hi=9))
def test_rational_rank_matches_fraction_oracle(data):
    rows, c = data
    M = Matrix([[Fraction(x, 1 + (i % 3)) for i, x in enumerate(r)] for r in rows], RATIONALS,
               cols=c)
    want = rank_fraction(M.tolist()) if rows else 0
    assert rank(M) == want
    for v in kernel_basis(M):
        for row in M.tolist():
            assert sum(a * b for a, b in zip(row, v)) == 0


def test_bareiss_integer_rank():
    rows = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
    out = bareiss_echelon(rows)
    assert rank(Matrix(rows, RATIONALS)) == 2 == rank_fraction(rows)
    assert out is not None


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 50), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_and_inverse(rows):
    M = Matrix(rows, F)
    d = det(M)
    assert d == det_leibniz(rows, F.p)
    assert det(Matrix(rows, RATIONALS)) == det_leibniz(rows)
    if d:
        assert M @ inverse(M) == identity(len(rows), F)
    else:
        with pytest.raises(ZeroDivisionError):
            inverse(M)


def test_rref_pivots_leftmost():
    a, piv = rref(Matrix([[0, 2, 4], [0, 1, 3], [0, 0, 0]], FieldSpec(7)))
    assert piv == [1, 2]
    assert a[0, 1] == 1 and a[1, 2] == 1


def test_large_prime_uses_object_arithmetic():
    big = FieldSpec(2**61 - 1)
    M = Matrix([[2**60, 3], [5, 2**59 + 7]], big)
    assert M.data.dtype == object
    assert rank(M) == rank_mod_p(M.tolist(), big.p)


def test_matrix_is_immutable():
    M = Matrix([[1, 2]], F)
    with pytest.raises(ValueError):
        M.data[0, 0] = 5
    assert M.append_row([3, 4]).rows == 2 and M.rows == 1
