from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linsuper import (
    RationalMatrix,
    dot,
    integer_primitive,
    kernel_basis,
    l1_normalized,
    rank,
    rref,
    solve,
)

F = Fraction


def M(rows, cols=None):
    return RationalMatrix.from_rows([[F(x) for x in row] for row in rows], cols=cols)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def matrices(draw, max_dim=5):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(rationals, min_size=rows * cols, max_size=rows * cols))
    return RationalMatrix(rows, cols, tuple(entries))


def test_rref_rank_one():
    reduced, pivots = rref(M([[1, 2], [2, 4]]))
    assert reduced == M([[1, 2], [0, 0]])
    assert pivots == (0,)


def test_rref_identity():
    ident = RationalMatrix.identity(3)
    reduced, pivots = rref(ident)
    assert reduced == ident
    assert pivots == (0, 1, 2)


def test_rref_fraction_entries():
    reduced, pivots = rref(M([[F(1, 2), F(1, 3)], [F(1, 4), F(1, 6)]]))
    assert reduced == M([[1, F(2, 3)], [0, 0]])
    assert pivots == (0,)


@given(matrices())
def test_rref_idempotent(m):
    reduced, pivots = rref(m)
    again, pivots2 = rref(reduced)
    assert again == reduced
    assert pivots2 == pivots


@given(matrices())
def test_kernel_vectors_annihilate(m):
    for vec in kernel_basis(m):
        assert all(x == 0 for x in m.mul_vector(vec))


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(matrices(), st.integers(0, 4), rationals.filter(lambda x: x != 0))
def test_row_scaling_does_not_change_rref_or_kernel(m, row_idx, scale):
    row_idx %= m.rows
    rows = m.row_lists()
    rows[row_idx] = [scale * x for x in rows[row_idx]]
    scaled = RationalMatrix.from_rows(rows, cols=m.cols)
    assert rref(scaled) == rref(m)
    assert kernel_basis(scaled) == kernel_basis(m)


def test_kernel_identity_empty():
    assert kernel_basis(RationalMatrix.identity(2)) == []


def test_kernel_one_row():
    assert kernel_basis(M([[1, 1]])) == [(F(1), F(-1))]


def test_kernel_vectors_are_integer_primitive():
    basis = kernel_basis(M([[F(1, 2), F(1, 3), F(1, 5)]]))
    assert len(basis) == 2
    for vec in basis:
        assert all(x.denominator == 1 for x in vec)
        first = next(x for x in vec if x)
        assert first > 0


def test_solve_identity():
    b = (F(3), F(-2))
    result = solve(RationalMatrix.identity(2), b)
    assert result.solution == b


def test_solve_zeroes_free_variables():
    result = solve(M([[1, 1]]), [F(2)])
    assert result.solution == (F(2), F(0))


def test_solve_inconsistent_reports_conflict_row():
    result = solve(M([[1], [1]]), [F(1), F(2)])
    assert result.solution is None
    assert result.conflict_row is not None
    *lhs, rhs = result.conflict_row
    assert all(x == 0 for x in lhs)
    assert rhs != 0


@given(matrices(), st.data())
def test_solve_agrees_with_rank_criterion(m, data):
    b = tuple(
        data.draw(st.lists(rationals, min_size=m.rows, max_size=m.rows), label="b")
    )
    augmented = RationalMatrix.from_rows(
        [list(m.row(i)) + [b[i]] for i in range(m.rows)], cols=m.cols + 1
    )
    solvable = rank(augmented) == rank(m)
    result = solve(m, b)
    if solvable:
        assert result.solution is not None
        assert m.mul_vector(result.solution) == b
    else:
        assert result.solution is None


def test_integer_primitive_scales_and_signs():
    assert integer_primitive((F(-2, 3), F(4, 3))) == (F(1), F(-2))
    assert integer_primitive((F(0), F(0))) == (F(0), F(0))


def test_l1_normalized():
    vec = l1_normalized((F(-2), F(1), F(1), F(1), F(-1)))
    assert sum(abs(x) for x in vec) == 1
    assert vec[0] > 0
    with pytest.raises(ValueError):
        l1_normalized((F(0),))


def test_dot_and_transpose():
    m = M([[1, 2, 3], [4, 5, 6]])
    assert m.transpose().transpose() == m
    assert dot((F(1), F(2)), (F(3), F(4))) == 11


def test_restrict_columns():
    m = M([[1, 2, 3], [4, 5, 6]])
    assert m.restrict_columns([2, 0]) == M([[3, 1], [6, 4]])
