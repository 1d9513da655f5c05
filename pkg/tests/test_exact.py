from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from s2wcheck.exact import (
    INFINITY,
    LAMBDA_QUINTIC,
    GPoly,
    ModP,
    Poly,
    RatFn,
    gpoly,
    gpoly_eval,
    local_expand,
    rank,
    rref,
    valuation_at,
    wronskian,
)
from s2wcheck.exact.linalg import det, left_nullspace, matmul, nullspace

X = sp.Symbol("x")
small = st.fractions(min_value=-20, max_value=20, max_denominator=7)
polys = st.lists(small, min_size=1, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def to_sympy(f: RatFn):
    num = sum(sp.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f.num.coeffs))
    den = sum(sp.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f.den.coeffs))
    return num / den


# -- local expansions -----------------------------------------------------------


def test_expand_monomial():
    e = local_expand(RatFn(Poly([0, 0, 1])), Fraction(0), 4)
    assert e.valuation == 2
    assert list(e.coeffs) == [1, 0, 0, 0]


def test_expand_geometric_series():
    f = RatFn(Poly([1]), Poly([-1, 1]))
    e = local_expand(f, Fraction(0), 3)
    assert e.valuation == 0
    assert list(e.coeffs) == [-1, -1, -1]


def test_expand_high_order_zero():
    f = RatFn(Poly.linear_power(2, 3), Poly([1, 1]))
    assert local_expand(f, Fraction(2), 2).valuation == 3


def test_expand_zero_function_has_no_valuation():
    e = local_expand(RatFn(Poly()), Fraction(1), 3)
    assert e.valuation is None and e.is_zero


def test_expand_pole():
    f = RatFn.pole(Fraction(1), 3)
    e = local_expand(f, Fraction(1), 2)
    assert e.valuation == -3
    assert list(e.coeffs) == [1, 0]


def test_expand_at_infinity_uses_inverse_chart():
    # x^2 / (x^3 + 1) = u / (1 + u^3) in u = 1/x
    f = RatFn(Poly([0, 0, 1]), Poly([1, 0, 0, 1]))
    e = local_expand(f, INFINITY, 4)
    assert e.valuation == 1
    assert list(e.coeffs) == [1, 0, 0, -1]


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys, small)
def test_expansion_matches_sympy_series(p, q, c):
    f = RatFn(p, q)
    if f.den(c) == 0:
        return
    e = local_expand(f, c, 5)
    ser = sp.series(to_sympy(f), X, sp.Rational(c.numerator, c.denominator), e.valuation + 5).removeO()
    t = sp.Symbol("t")
    ser = sp.expand(ser.subs(X, t + sp.Rational(c.numerator, c.denominator)))
    for k in range(5):
        assert Fraction(str(ser.coeff(t, e.valuation + k))) == e.coeffs[k]


@settings(max_examples=80, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys, st.integers(-3, 3))
def test_valuation_is_additive(p, q, r, c):
    f, h = RatFn(p, q), RatFn(r, q)
    c = Fraction(c)
    assert valuation_at(f * h, c) == valuation_at(f, c) + valuation_at(h, c)


# -- Wronskians ---------------------------------------------------------------------


def test_wronskian_examples():
    one, x = RatFn(Poly([1])), RatFn.x()
    assert wronskian([one, x]) == one
    assert wronskian([one, x, x * x]) == RatFn(Poly([2]))
    f = wronskian([RatFn.pole(Fraction(0), 2), RatFn.pole(Fraction(1), 2)])
    expected = RatFn(Poly([-2]), Poly([0, 0, 0, 1]) * Poly.linear_power(1, 3))
    assert f == expected


def test_wronskian_of_dependent_functions_vanishes():
    x = RatFn.x()
    assert wronskian([x, x * 3]).is_zero()


@settings(max_examples=50, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys, nonzero_polys)
def test_wronskian_two_functions(p, q, r, s):
    f, g = RatFn(p, q), RatFn(r, s)
    assert wronskian([f, g]) == f * g.derivative() - g * f.derivative()


@settings(max_examples=12, deadline=None)
@given(st.lists(nonzero_polys, min_size=3, max_size=3), nonzero_polys)
def test_wronskian_against_sympy(nums, den):
    fs = [RatFn(n, den) for n in nums]
    ours = wronskian(fs)
    theirs = sp.wronskian([to_sympy(f) for f in fs], X)
    assert sp.cancel(to_sympy(ours) - theirs) == 0


# -- row reduction -------------------------------------------------------------------


def test_rref_examples():
    assert rref([[1, 0], [0, 1]]).rank == 2
    r = rref([[1, 2], [2, 4]])
    assert r.rank == 1 and r.pivots == (0,)
    assert rref([]).rank == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=4, max_size=4),
       st.lists(st.lists(small, min_size=6, max_size=6), min_size=3, max_size=3))
def test_rank_of_product_of_rank_three_factors(a, b):
    if rank(a) != 3 or rank(b) != 3:
        return
    assert rank(matmul(a, b)) == 3


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5), st.randoms())
def test_rref_idempotent_and_shuffle_invariant(m, rnd):
    r = rref(m)
    again = rref([list(row) for row in r.rows])
    assert again.rows == r.rows
    shuffled = list(m)
    rnd.shuffle(shuffled)
    assert rref(shuffled).rank == r.rank
    assert rref(shuffled).rows[: r.rank] == r.rows[: r.rank]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=4))
def test_nullspaces(m):
    for v in nullspace(m, 5):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    assert len(nullspace(m, 5)) == 5 - rank(m)
    for w in left_nullspace(m, len(m)):
        assert all(sum(w[i] * m[i][j] for i in range(len(m))) == 0 for j in range(5))


def test_det_matches_sympy():
    m = [[Fraction(1, 2), 3, -1], [2, Fraction(-5, 3), 4], [0, 7, Fraction(1, 9)]]
    assert det(m) == Fraction(str(sp.Matrix(m).det()))


def test_rref_over_prime_field():
    p = 7
    m = [[ModP(a, p) for a in row] for row in ([1, 2, 3], [2, 4, 6], [1, 0, 1])]
    assert rref(m).rank == 2


# -- polynomials in g -------------------------------------------------------------


def test_gpoly_eval_examples():
    assert gpoly_eval(LAMBDA_QUINTIC, 5) == 8016
    assert gpoly_eval(GPoly(), 5) == 0
    assert gpoly_eval(gpoly([1, 0, 0]), 7) == 49


def test_binomial_needs_rational_coefficients():
    g = GPoly.g()
    half = g * (g - 1) / 2
    assert not half.is_integral()
    assert all(isinstance(half.eval(k), int) for k in range(10))
    with pytest.raises(ArithmeticError):
        half.integer_coeffs()


gps = st.lists(st.integers(-50, 50), min_size=1, max_size=5).map(GPoly)


@settings(max_examples=100, deadline=None)
@given(gps, gps, gps)
def test_gpoly_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert isinstance(a * b, GPoly)


@settings(max_examples=100, deadline=None)
@given(polys, nonzero_polys)
def test_poly_division(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@settings(max_examples=60, deadline=None)
@given(polys, small)
def test_taylor_shift(p, c):
    s = p.shift(c)
    for t in (Fraction(0), Fraction(1), Fraction(-2, 3)):
        assert s(t) == p(t + c)
