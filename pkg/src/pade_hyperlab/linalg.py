"""Dense matrices over exact rationals or fixed-precision complex numbers.

Indices are 0-based.  ``submatrix(X, rows, cols)`` is the selection written
``X^{rows}_{cols}`` in the usual minor notation; ``minor_det`` is its
determinant, with the empty minor equal to 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import IndexOutOfBounds, LengthMismatch, NotSquare, SpecError
from .numerics import RATIONAL, common_field


class Matrix:
    """Immutable dense matrix; all entries live in one field."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, entries: Iterable[Sequence], field=None, cols: int | None = None):
        data = [list(r) for r in entries]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise LengthMismatch("ragged matrix rows")
        if field is None:
            field = common_field([x for r in data for x in r])
        self.field = field
        self.rows = len(data)
        self.cols = cols
        self._data = tuple(tuple(field(x) for x in r) for r in data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=None) -> "Matrix":
        return cls(rows, field=field)

    @classmethod
    def identity(cls, n: int, field=RATIONAL) -> "Matrix":
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field, n)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.field!r})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LengthMismatch(f"cannot multiply {self.shape} by {other.shape}")
        field = self.field if not self.field.exact else other.field
        out = []
        for i in range(self.rows):
            ri = self._data[i]
            row = []
            for j in range(other.cols):
                acc = field.zero
                for k in range(self.cols):
                    acc = acc + ri[k] * other._data[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(out, field, other.cols)

    def transpose(self) -> "Matrix":
        return Matrix([[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.field, self.rows)

    def swap_rows(self, a: int, b: int) -> "Matrix":
        data = self.tolist()
        data[a], data[b] = data[b], data[a]
        return Matrix(data, self.field, self.cols)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[self.field.to_json(x) for x in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, obj: dict, field=RATIONAL) -> "Matrix":
        try:
            rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"matrix JSON needs rows/cols/entries: {exc}") from None
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise SpecError("matrix JSON entries disagree with rows/cols")
        return cls([[field.from_json(x) for x in r] for r in entries], field, cols)


def submatrix(X: Matrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
    for i in row_idx:
        if not 0 <= i < X.rows:
            raise IndexOutOfBounds(f"row {i} outside 0..{X.rows - 1}")
    for j in col_idx:
        if not 0 <= j < X.cols:
            raise IndexOutOfBounds(f"column {j} outside 0..{X.cols - 1}")
    data = X._data
    return Matrix([[data[i][j] for j in col_idx] for i in row_idx], X.field, len(col_idx))


def det(X: Matrix):
    """Determinant: fraction-free Bareiss over the rationals, pivoted LU otherwise."""
    if not X.is_square:
        raise NotSquare(f"determinant of a {X.rows}x{X.cols} matrix")
    if X.rows == 0:
        return X.field.one
    if X.field.exact:
        return _det_bareiss(X._data)
    return _det_lu(X._data, X.field)


def minor_det(X: Matrix, row_idx: Sequence[int], col_idx: Sequence[int]):
    if len(row_idx) != len(col_idx):
        raise NotSquare(f"minor with {len(row_idx)} rows and {len(col_idx)} columns")
    if not row_idx:
        return X.field.one
    return det(submatrix(X, row_idx, col_idx))


def det_scale(X: Matrix):
    """Product of the row 1-norms, an upper bound for ``|det X|``."""
    acc = X.field.one if not X.field.exact else Fraction(1)
    for r in X._data:
        acc = acc * sum((abs(x) for x in r), 0 * acc)
    return abs(acc)


def minor_scale(X: Matrix, row_idx: Sequence[int], col_idx: Sequence[int]):
    return det_scale(submatrix(X, row_idx, col_idx))


def det_rows(rows: Sequence[Sequence], field=None):
    """Determinant of a square list-of-rows without building a Matrix first."""
    return det(Matrix(rows, field=field, cols=len(rows)))


def _det_bareiss(data) -> Fraction:
    # Scale each row to integers, eliminate fraction-free, undo the scaling.
    n = len(data)
    scale = 1
    a = []
    for r in data:
        m = lcm(*(x.denominator for x in r))
        scale *= m
        a.append([x.numerator * (m // x.denominator) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def _det_lu(data, field):
    n = len(data)
    a = [list(r) for r in data]
    result = field.one
    for k in range(n):
        # max modulus pivot; strict comparison keeps the lowest row on ties
        p = k
        best = abs(a[k][k])
        for i in range(k + 1, n):
            v = abs(a[i][k])
            if v > best:
                p, best = i, v
        if best == 0:
            return field.zero
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        pivot = a[k][k]
        result = result * pivot
        rk = a[k]
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor == 0:
                continue
            ri = a[i]
            for j in range(k + 1, n):
                ri[j] = ri[j] - factor * rk[j]
    return result


def top_row_cofactors(rows: Sequence[Sequence], field) -> list:
    """Cofactors of the first row of a square matrix given by ``rows[1:]``.

    ``rows`` is the list of the n-1 lower rows of an n x n matrix; entry ``j``
    of the result is the coefficient of the top-row entry in column ``j`` in
    the Laplace expansion, so ``det = sum(top[j] * cof[j])``.
    """
    n = len(rows) + 1
    if field.exact and n > 2:
        fast = _cofactors_by_kernel(rows)
        if fast is not None:
            return fast
    out = []
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        minor = det(Matrix([[r[c] for c in cols] for r in rows], field, n - 1))
        out.append(minor if j % 2 == 0 else -minor)
    return out


def integer_rows(rows) -> tuple:
    """Each rational row as ``(integers, denominator)`` with ``row = integers/denominator``."""
    out = []
    for r in rows:
        m = lcm(*(x.denominator for x in r))
        out.append(([x.numerator * (m // x.denominator) for x in r], m))
    return out


def _cofactors_by_kernel(rows) -> list | None:
    """All top-row cofactors from one fraction-free elimination.

    The cofactor vector spans the kernel of ``rows``.  Bareiss on the
    ``k x (k+1)`` block gives the last cofactor as the leading ``k x k``
    minor, and back substitution recovers the rest.  Returns ``None`` when
    a pivot in the leading block vanishes, so the caller can fall back to
    one minor per column.
    """
    scale = 1
    a = []
    for ints, m in integer_rows(rows):
        scale *= m
        a.append(ints)
    v = integer_kernel(a)
    return None if v is None else [Fraction(x, scale) for x in v]


def integer_kernel(a) -> list | None:
    """Top-row cofactors of an integer ``k x (k+1)`` block, as integers.

    ``a`` is overwritten.  ``None`` means a leading pivot vanished.
    """
    k = len(a)
    sign = 1
    prev = 1
    for p in range(k):
        if a[p][p] == 0:
            for q in range(p + 1, k):
                if a[q][p] != 0:
                    a[p], a[q] = a[q], a[p]
                    sign = -sign
                    break
            else:
                return None
        app = a[p][p]
        rp = a[p]
        for i in range(p + 1, k):
            ri = a[i]
            aip = ri[p]
            for j in range(p + 1, k + 1):
                ri[j] = (ri[j] * app - aip * rp[j]) // prev
            ri[p] = 0
        prev = app
    # prev is the leading k x k minor; the cofactors of an integer matrix
    # are integers, so every division below is exact
    v = [0] * (k + 1)
    v[k] = sign * prev if k % 2 == 0 else -sign * prev
    for i in range(k - 1, -1, -1):
        acc = 0
        ai = a[i]
        for j in range(i + 1, k + 1):
            acc += ai[j] * v[j]
        v[i] = -acc // ai[i]
    return v
