from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from s2wcheck.families import (
    RelationError,
    degree_row,
    expected_ratio,
    relation_matrix,
    solve_relations,
    verify_ratio_formula,
)


def proportional(row, target):
    """True when ``row`` is a nonzero multiple of ``target``."""
    return sp.Matrix([row, target]).rank() == 1 and any(row)


@pytest.mark.parametrize("g,i,coeffs", [
    (5, 2, [3, -2]),
    (7, 2, [3, -3, 1]),
    (8, 4, [2, -1, 2, -2]),
])
def test_row_examples(g, i, coeffs):
    assert proportional(list(degree_row(g, i).boundary), coeffs)


def test_lambda_and_delta0_vanish():
    for g in range(5, 16):
        for i in range(2, g // 2 + 1):
            assert degree_row(g, i).degrees[:2] == (0, 0)


def test_out_of_range():
    with pytest.raises(RelationError):
        degree_row(4, 2)
    with pytest.raises(RelationError):
        degree_row(9, 5)
    with pytest.raises(RelationError):
        degree_row(9, 1)


def test_folding_is_recorded():
    assert any("folded" in t for t in degree_row(5, 2).trace)
    assert not degree_row(11, 3).trace


@pytest.mark.parametrize("g,expected", [
    (5, [Fraction(3, 2)]),
    (6, [Fraction(8, 5), Fraction(9, 5)]),
    (7, [Fraction(5, 3), Fraction(2)]),
])
def test_solve_examples(g, expected):
    sol = solve_relations(g)
    assert sol.ratio(1) == 1
    assert list(sol.ratios[1:]) == expected
    assert sol.nullity == 1


def test_solve_against_sympy():
    for g in (9, 12, 17):
        M = sp.Matrix(relation_matrix(g))
        (v,) = M.nullspace()
        ours = solve_relations(g).ratios
        assert [Fraction(str(x / v[0])) for x in v] == list(ours)


@given(st.integers(5, 25))
def test_formula_satisfies_every_row(g):
    a = [expected_ratio(g, l) for l in range(1, g // 2 + 1)]
    for i in range(2, g // 2 + 1):
        assert sum(c * x for c, x in zip(degree_row(g, i).boundary, a)) == 0


@given(st.integers(5, 40))
def test_rank_in_the_unknown_ratios(g):
    M = sp.Matrix([row[1:] for row in relation_matrix(g)])
    assert M.rank() == g // 2 - 1


@given(st.integers(5, 40))
def test_row_entries_sum(g):
    # -2 + 1 - 1 + 2 - 1 for every row; folding only merges slots
    for i in range(2, g // 2 + 1):
        assert sum(degree_row(g, i).boundary) == -1


def test_verify_ratio_formula_through_21():
    rep = verify_ratio_formula(21)
    assert rep.ok
    assert sum(1 for c in rep.cases if "/a" in c.id) == sum(g // 2 - 1 for g in range(5, 22))


def closed_form_row(g, i):
    """``2a_1 - a_2 + a_{i-1} - 2a_i + a_{i+1}``, with the two boundary shapes at the middle index."""
    row = [0] * (g // 2)
    row[0] += 2
    row[1] -= 1
    if g % 2 == 0 and i == g // 2:
        row[i - 2] += 2
        row[i - 1] -= 2
    elif g % 2 == 1 and i == (g - 1) // 2:
        row[i - 2] += 1
        row[i - 1] -= 1
    else:
        row[i - 2] += 1
        row[i - 1] -= 2
        row[i] += 1
    return row


def test_rows_match_closed_forms():
    for g in range(5, 26):
        for i in range(2, g // 2 + 1):
            assert [-c for c in degree_row(g, i).boundary] == closed_form_row(g, i), (g, i)
