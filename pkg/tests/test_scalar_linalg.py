from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from codiff.linalg import ExactMatrix, nullspace, rank, rref, solve, span
from codiff.scalar import I, ONE, ZERO, Scalar, as_scalar, parse_rational

entries = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_scalar_field_ops():
    a = Scalar(Fraction(1, 2), 3)
    assert a * a.inverse() == ONE
    assert a - a == ZERO
    assert I * I == as_scalar(-1)
    assert (a / 2) * 2 == a
    assert Scalar.from_json(a.to_json()) == a
    assert as_scalar(Fraction(3, 4)).is_real()


def test_scalar_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_parse_rational_rejects_decimals():
    assert parse_rational(" -3/6 ") == Fraction(-1, 2)
    with pytest.raises(ValueError):
        parse_rational("0.5")


@given(matrices())
def test_rank_matches_sympy(rows):
    M = ExactMatrix.from_rows(rows)
    assert rank(M) == sympy.Matrix(rows).rank()


@given(matrices())
def test_nullspace_is_kernel(rows):
    M = ExactMatrix.from_rows(rows)
    N = nullspace(M)
    assert N.dim == M.shape[1] - rank(M)
    for v in N.basis():
        assert all(x == 0 for x in M.apply(v))


@given(matrices(), st.lists(entries, min_size=6, max_size=6))
def test_solve_consistent(rows, coeffs):
    M = ExactMatrix.from_rows(rows)
    x = coeffs[: M.shape[1]]
    b = M.apply(x)
    sol = solve(M, b)
    assert sol is not None
    assert M.apply(sol) == b


def test_solve_inconsistent():
    M = ExactMatrix.from_rows([[1, 0], [1, 0]])
    assert solve(M, [1, 2]) is None


def test_rref_pivots():
    R, r, piv = rref(ExactMatrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
    assert r == 2 and piv == [0, 1]


def test_complex_entries():
    M = ExactMatrix.from_rows([[1, I], [I, -1]])
    assert rank(M) == 1
    assert not M.is_real()


def test_span_contains_and_coordinates():
    S = span([[1, 1, 0], [0, 1, 1]], 3)
    assert S.contains([1, 2, 1])
    assert not S.contains([1, 0, 0])
    c = S.coordinates([2, 3, 1])
    assert c is not None
