from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polyslack.exactmath import (
    InconsistentSystem,
    RationalMatrix,
    determinant,
    format_rational,
    in_column_span,
    nullspace,
    parse_rational,
    rank,
    solve_linear,
    to_rational,
)

S_P1 = RationalMatrix.from_rows([[0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1], [1, 1, 0, 0]])

rationals = st.builds(Fraction, st.integers(-100, 100), st.integers(1, 50))


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(rationals, min_size=r * c, max_size=r * c).map(lambda e: RationalMatrix(r, c, e))
        )
    )


def test_rank_unit_square_slack_matrix():
    assert rank(S_P1) == 3


def test_rank_identity():
    assert rank(RationalMatrix.identity(3)) == 3


def test_rank_of_product_is_inner_dimension():
    # random rank-2 factorization, checked full rank by construction
    a = RationalMatrix.from_rows([[1, 2], [Fraction(1, 3), -1], [0, 5], [7, Fraction(2, 7)], [-4, 1]])
    b = RationalMatrix.from_rows([[1, 0, 2, Fraction(-1, 2), 3, 1], [0, 1, 1, 4, Fraction(5, 3), -2]])
    assert rank(a) == 2 and rank(b) == 2
    assert rank(a @ b) == 2


def test_solve_identity():
    assert solve_linear(RationalMatrix.identity(2), [3, Fraction(5, 2)]) == (3, Fraction(5, 2))


def test_solve_facet_normal():
    a = RationalMatrix.from_rows([[1, 0], [1, 1], [0, 1]])
    with pytest.raises(InconsistentSystem):
        solve_linear(a, [1, 1, 1])
    a2 = RationalMatrix.from_rows([[1, 0], [0, 1]])
    x = solve_linear(a2, [1, 1])
    assert a2.apply(x) == (1, 1)


def test_solve_inconsistent():
    with pytest.raises(InconsistentSystem):
        solve_linear(RationalMatrix.from_rows([[1], [1]]), [1, 2])


def test_solve_underdetermined_zero_completion():
    x = solve_linear(RationalMatrix.from_rows([[1, 1, 0], [0, 0, 1]]), [2, 3])
    assert x == (2, 0, 3)


def test_ones_in_column_span():
    assert in_column_span(S_P1, [1, 1, 1, 1])
    # S_P(s) for s = (2,2,2,1,8,2,2,1) on the quadrilateral pattern
    s = RationalMatrix.from_rows([[0, 2, 2, 0], [0, 0, 2, 1], [8, 0, 0, 2], [2, 1, 0, 0]])
    assert not in_column_span(s, [1, 1, 1, 1])
    assert in_column_span(RationalMatrix.zeros(3, 2), [0, 0, 0])


def test_rational_text_round_trip():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4"
    assert parse_rational(" 7/21 ") == Fraction(1, 3)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_determinant_matches_cofactor_oracle():
    m = RationalMatrix.from_rows([[2, Fraction(1, 2), 0], [1, 3, -1], [0, 4, Fraction(1, 3)]])
    a = m.tolists()
    cof = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
           - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
           + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    assert determinant(m) == cof


@given(matrices())
def test_rank_transpose_invariant(m):
    assert rank(m) == rank(m.T)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(rationals, min_size=n * n, max_size=n * n), st.lists(rationals, min_size=n, max_size=n))))
def test_solve_substitutes_back(data):
    entries, b = data
    n = len(b)
    m = RationalMatrix(n, n, entries)
    if rank(m) < n:
        return
    x = solve_linear(m, b)
    assert list(m.apply(x)) == b


@given(matrices(), st.data())
def test_in_column_span_matches_definition(m, data):
    v = data.draw(st.lists(rationals, min_size=m.rows, max_size=m.rows))
    assert in_column_span(m, v) == (rank(m.with_column(v)) == rank(m))
    # any combination of columns is in the span
    coeffs = data.draw(st.lists(rationals, min_size=m.cols, max_size=m.cols))
    assert in_column_span(m, m.apply(coeffs))


@given(st.integers(-(2 ** 256), 2 ** 256), st.integers(1, 2 ** 256),
       st.integers(-(2 ** 256), 2 ** 256), st.integers(1, 2 ** 256))
def test_exact_arithmetic_big(a, b, c, d):
    x, y = Fraction(a, b), Fraction(c, d)
    assert (x + y) - y == x


@settings(max_examples=50)
@given(matrices())
def test_nullspace_vectors_are_annihilated(m):
    for v in nullspace(m):
        assert all(e == 0 for e in m.apply(v))
    assert len(nullspace(m)) == m.cols - rank(m)
