from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import laplace_det, nullspace_vector
from pade_hyperlab.errors import IndexOutOfBounds, NotSquare, SpecError
from pade_hyperlab.linalg import (
    Matrix,
    det,
    integer_kernel,
    minor_det,
    submatrix,
    top_row_cofactors,
)
from pade_hyperlab.numerics import RATIONAL, EqPolicy, complex_field, proj_eq, scalar_eq
from pade_hyperlab.sampling import make_rng, random_matrix

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


X3 = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 10]])


def test_submatrix_picks_entries():
    Y = submatrix(X3, [0, 2], [1, 2])
    assert Y.tolist() == [[2, 3], [8, 10]]
    assert submatrix(X3, [0, 1, 2], [0, 1, 2]) == X3
    assert submatrix(X3, [1], [1]).tolist() == [[5]]


def test_submatrix_duplicates_give_singular_minor():
    assert det(submatrix(X3, [0, 0], [1, 2])) == 0


def test_submatrix_out_of_bounds():
    with pytest.raises(IndexOutOfBounds):
        submatrix(X3, [3], [0])
    with pytest.raises(IndexOutOfBounds):
        submatrix(X3, [0], [-1])


def test_det_small_cases():
    assert det(Matrix.identity(4)) == 1
    assert det(Matrix([[1, 2], [3, 4]])) == -2
    assert det(Matrix([[0, 1], [1, 0]])) == -1
    with pytest.raises(NotSquare):
        det(Matrix([[1, 2, 3], [4, 5, 6]]))


def test_det_random_5x5_matches_cofactor_expansion():
    rng = make_rng(3)
    rows = [[Fraction(int(rng.integers(-9, 10))) for _ in range(5)] for _ in range(5)]
    assert det(Matrix(rows)) == laplace_det(rows)


def test_minor_det_cases():
    rng = make_rng(4)
    X = random_matrix(rng, 6, 4)
    rows, cols = [2, 3, 4], [0, 1, 3]
    assert minor_det(X, rows, cols) == det(submatrix(X, rows, cols))
    # one omitted row out of a consecutive run
    rows = [0, 1, 3, 4]
    sub = [[X[i, j] for j in range(4)] for i in rows]
    assert minor_det(X, rows, range(4)) == laplace_det(sub)
    assert minor_det(X, [], []) == 1
    with pytest.raises(NotSquare):
        minor_det(X, [0, 1], [0])


def test_matrix_json_round_trip():
    X = Matrix([[Fraction(1, 2), 3], [0, Fraction(-7, 3)]])
    data = X.to_json()
    assert data == {"rows": 2, "cols": 2, "entries": [["1/2", "3/1"], ["0/1", "-7/3"]]}
    assert Matrix.from_json(data) == X
    with pytest.raises(SpecError):
        Matrix.from_json({"rows": 3, "cols": 2, "entries": data["entries"]})


@given(st.integers(1, 6).flatmap(square))
def test_bareiss_equals_cofactor_oracle(rows):
    assert det(Matrix(rows)) == laplace_det(rows)


@given(st.integers(2, 6).flatmap(square), st.data())
def test_row_swap_negates(rows, data):
    n = len(rows)
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1).filter(lambda x: x != a))
    X = Matrix(rows)
    assert det(X.swap_rows(a, b)) == -det(X)


@given(square(3), st.integers(0, 2), small, small)
def test_multilinear_in_a_row(rows, i, s, t):
    other = [[x + 1 for x in r] for r in rows]
    mixed = [list(r) for r in rows]
    mixed[i] = [s * x + t * y for x, y in zip(rows[i], other[i])]
    with_other = [list(r) for r in rows]
    with_other[i] = other[i]
    assert det(Matrix(mixed)) == s * det(Matrix(rows)) + t * det(Matrix(with_other))


@given(square(4), square(4))
def test_det_multiplicative(a, b):
    A, B = Matrix(a), Matrix(b)
    assert det(A @ B) == det(A) * det(B)


@pytest.mark.parametrize("n", [1, 4, 8, 12])
def test_float_det_matches_exact(n):
    rng = make_rng(100 + n)
    X = random_matrix(rng, n, n)
    C = complex_field(256)
    Xc = Matrix([[C(x) for x in r] for r in X.tolist()], C)
    assert scalar_eq(det(Xc), C(det(X)), EqPolicy.relative(1e-9 * n, 0))


def test_float_det_is_deterministic():
    C = complex_field(256)
    X = random_matrix(make_rng(9), 7, 7, C)
    assert det(X) == det(Matrix(X.tolist(), C))


def test_float_det_singular_is_zero():
    C = complex_field(128)
    X = Matrix([[C(1), C(2)], [C(0), C(0)]], C)
    assert det(X) == 0


@given(st.integers(1, 5).flatmap(lambda k: st.lists(
    st.lists(st.integers(-30, 30), min_size=k + 1, max_size=k + 1), min_size=k, max_size=k)))
def test_integer_kernel_is_top_row_cofactors(a):
    k = len(a)
    expect = []
    for j in range(k + 1):
        minor = [r[:j] + r[j + 1:] for r in a]
        d = laplace_det(minor)
        expect.append(d if j % 2 == 0 else -d)
    got = integer_kernel([list(r) for r in a])
    if got is not None:
        assert got == expect


@given(st.integers(2, 6).flatmap(lambda n: st.lists(
    st.lists(small, min_size=n, max_size=n), min_size=n - 1, max_size=n - 1)))
def test_top_row_cofactors_expand_det(lower):
    n = len(lower) + 1
    cof = top_row_cofactors(lower, RATIONAL)
    top = [Fraction(j + 2, 3) for j in range(n)]
    assert sum(t * c for t, c in zip(top, cof)) == laplace_det([top] + lower)
    if any(c != 0 for c in cof):
        try:
            kernel = nullspace_vector(lower)
        except AssertionError:
            return
        assert proj_eq(cof, kernel)
