"""Exact dense linear algebra over F_p or Q.

Prime fields are reduced with vectorised Gauss-Jordan elimination on int64
arrays (object arrays once p no longer fits).  Rational ranks use Bareiss
fraction-free elimination on integer-scaled rows.  Pivoting is always the
leftmost nonzero column, topmost available row, so echelon forms and kernel
bases are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence

import numpy as np

from .errors import DimensionMismatch
from .scalar import FieldSpec


class Matrix:
    """Immutable r x c matrix over a :class:`FieldSpec`."""

    __slots__ = ("data", "field")

    def __init__(self, data, field: FieldSpec, *, cols: int | None = None):
        if isinstance(data, np.ndarray) and data.ndim == 2 and _dtype_ok(data, field):
            arr = data.copy()
        else:
            rows = [list(r) for r in data]
            if not rows:
                arr = np.zeros((0, cols or 0), dtype=field.dtype)
            else:
                width = len(rows[0])
                if any(len(r) != width for r in rows):
                    raise DimensionMismatch("ragged rows")
                arr = field.array(rows) if width else np.zeros((len(rows), 0), dtype=field.dtype)
        arr.flags.writeable = False
        self.data = arr
        self.field = field

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def tolist(self) -> list:
        return [[_scalar(v) for v in row] for row in self.data]

    def transpose(self) -> "Matrix":
        return Matrix(self.data.T.copy(), self.field)

    def append_row(self, v: Sequence) -> "Matrix":
        if len(v) != self.cols:
            raise DimensionMismatch(f"row of length {len(v)} for {self.cols} columns")
        row = self.field.array([list(v)])
        return Matrix(np.vstack([self.data, row]), self.field)

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.data[list(idx)], self.field, cols=self.cols)

    def delete_row(self, i: int) -> "Matrix":
        return Matrix(np.delete(self.data, i, axis=0), self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        prod = _matmul(self.data, other.data, self.field)
        return Matrix(prod, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.data == other.data))
        )

    def __repr__(self):
        return f"Matrix({self.tolist()}, field={self.field})"


def _dtype_ok(arr: np.ndarray, field: FieldSpec) -> bool:
    if field.dtype is object:
        return arr.dtype == object
    return arr.dtype == np.int64


def _scalar(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def _matmul(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    if field.p is None or field.dtype is object:
        out = np.empty((a.shape[0], b.shape[1]), dtype=object)
        for i in range(a.shape[0]):
            for j in range(b.shape[1]):
                out[i, j] = sum((a[i, k] * b[k, j] for k in range(a.shape[1])), start=0)
        if field.p is None:
            out = field.array(out.tolist()) if out.size else out
        return field.reduce_array(out)
    p = field.p
    # accumulate column by column to keep every partial sum below 2**63
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + np.outer(a[:, k], b[k, :]) % p) % p
    return out


def identity(n: int, field: FieldSpec) -> Matrix:
    return Matrix([[int(i == j) for j in range(n)] for i in range(n)], field, cols=n)


# ---------------------------------------------------------------------------
# elimination kernels


def rref(M: Matrix):
    """Reduced row echelon form and pivot columns.

    Rationals go through Bareiss first and are only normalised at the end.
    """
    if M.field.p is None:
        return _rref_rational(M)
    a = M.data.copy()
    a.flags.writeable = True
    p = M.field.p
    r, c = a.shape
    pivots: List[int] = []
    row = 0
    for col in range(c):
        if row == r:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), -1, p)
        a[row] = a[row] * inv % p
        factors = a[:, col].copy()
        factors[row] = 0
        if np.any(factors):
            a -= np.outer(factors, a[row]) % p
            a %= p
        pivots.append(col)
        row += 1
    return a, pivots


def _integer_rows(M: Matrix) -> List[List[int]]:
    out = []
    for row in M.data:
        fr = [Fraction(v) for v in row]
        den = lcm(*(f.denominator for f in fr)) if fr else 1
        out.append([int(f * den) for f in fr])
    return out


def bareiss_echelon(rows: List[List[int]]):
    """Fraction-free row echelon form of an integer matrix.

    Returns the echelon rows (integers) and pivot columns.  Every division
    performed is exact, so entries stay integral and bounded by minors.
    """
    a = [list(r) for r in rows]
    r = len(a)
    c = len(a[0]) if a else 0
    pivots: List[int] = []
    prev = 1
    row = 0
    for col in range(c):
        if row == r:
            break
        piv = next((i for i in range(row, r) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        for i in range(row + 1, r):
            ai = a[i]
            f = ai[col]
            for j in range(col, c):
                ai[j] = (pv * ai[j] - f * a[row][j]) // prev
            # columns left of col are zero in rows below the pivot
        prev = pv
        pivots.append(col)
        row += 1
    return a, pivots


def _rref_rational(M: Matrix):
    ech, pivots = bareiss_echelon(_integer_rows(M))
    r, c = M.shape
    a = [[Fraction(v) for v in row] for row in ech]
    for k in range(len(pivots) - 1, -1, -1):
        col = pivots[k]
        pv = a[k][col]
        a[k] = [v / pv for v in a[k]]
        for i in range(k):
            f = a[i][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    arr = np.empty((r, c), dtype=object)
    for i in range(r):
        for j in range(c):
            arr[i, j] = a[i][j] if i < len(pivots) else Fraction(0)
    return arr, pivots


def rank(M: Matrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.field.p is None:
        return len(bareiss_echelon(_integer_rows(M))[1])
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> List[list]:
    """Basis of the right kernel, one vector per free column.

    Each vector has a 1 at its free column, zeros at the other free columns,
    and the negated reduced-echelon entries at the pivot columns.
    """
    c = M.cols
    if M.rows == 0:
        a, pivots = np.zeros((0, c), dtype=M.field.dtype), []
    else:
        a, pivots = rref(M)
    field = M.field
    pivset = set(pivots)
    basis = []
    for free in range(c):
        if free in pivset:
            continue
        v = [field.reduce(0)] * c
        v[free] = field.reduce(1)
        for i, pc in enumerate(pivots):
            v[pc] = field.reduce(-_scalar(a[i, free]))
        basis.append(v)
    return basis


def in_row_span(M: Matrix, v: Sequence) -> bool:
    if len(v) != M.cols:
        raise DimensionMismatch(f"vector of length {len(v)} for {M.cols} columns")
    return rank(M.append_row(v)) == rank(M)


def inverse(M: Matrix) -> Matrix:
    n = M.rows
    if M.cols != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = Matrix(np.hstack([M.data, identity(n, M.field).data]), M.field)
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(np.ascontiguousarray(a[:, n:]), M.field)


def det(M: Matrix):
    """Determinant as a by-product of elimination (prime fields and Q)."""
    n = M.rows
    if M.cols != n:
        raise DimensionMismatch("determinant of a non-square matrix")
    field = M.field
    a = [[_scalar(v) for v in row] for row in M.data]
    d = field.reduce(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return field.reduce(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = field.reduce(-d)
        pv = a[col][col]
        d = field.reduce(d * pv)
        inv = field.inv(pv)
        for i in range(col + 1, n):
            f = field.reduce(a[i][col] * inv)
            if f != 0:
                a[i] = [field.reduce(x - f * y) for x, y in zip(a[i], a[col])]
    return d
