import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from properties import expressions, g_coeffs, rewriting_confluence
from s2wcheck.exact import LAMBDA_QUINTIC
from s2wcheck.exact.gpoly import GPoly
from s2wcheck.intersect import (
    D,
    K1,
    K2,
    L,
    DegreeError,
    IClass,
    XClass,
    class_S2W,
    class_W,
    coefficient_a,
    is_normal,
    normalize,
    pushforward_p1,
    pushforward_p1_monomial,
    pushforward_pi,
)

sym = IClass.symbol


def top(x: IClass) -> GPoly:
    """``pi_* p1_*`` of a degree-3 class."""
    return pushforward_pi(pushforward_p1(normalize(x)))


def test_rewrite_examples():
    d2 = sym(D) * sym(D)
    assert normalize(d2) == sym((1, 0, 1, 0), -1)
    assert normalize(sym(K2) * sym(D)) == sym((1, 0, 1, 0))
    assert normalize(sym((0, 3, 0, 0))).is_zero()
    assert normalize(sym((0, 0, 0, 2))).is_zero()
    assert normalize(sym((1, 1, 1, 1))).is_zero()


def test_normal_forms_are_fixed():
    for m in [(1, 1, 0, 1), (2, 0, 1, 0), (0, 2, 0, 1), (1, 0, 1, 1)]:
        assert is_normal(m)
        assert normalize(sym(m)) == sym(m)


def test_diagonal_cubed():
    # D^3 = K1^2 D, pushed down to K_pi^2 = 12 lambda
    assert normalize(sym((0, 0, 3, 0))) == sym((2, 0, 1, 0))
    assert top(sym((0, 0, 3, 0))) == GPoly([12])


@pytest.mark.parametrize("mono,expected", [
    ((2, 1, 0, 0), GPoly([-24, 24])),      # (2g-2) * 12
    ((1, 2, 0, 0), GPoly([-24, 24])),
    ((1, 1, 0, 1), GPoly([4, -8, 4])),     # (2g-2)^2
    ((2, 0, 0, 1), GPoly()),
    ((1, 0, 1, 1), GPoly([-2, 2])),
    ((2, 0, 1, 0), GPoly([12])),
    ((0, 2, 0, 1), GPoly()),
])
def test_top_intersections(mono, expected):
    assert top(sym(mono)) == expected


def test_pushforward_rejects_wrong_degree():
    with pytest.raises(DegreeError):
        pushforward_p1_monomial((1, 0, 0, 0))
    with pytest.raises(DegreeError):
        pushforward_p1_monomial((0, 0, 2, 1))  # not in normal form
    with pytest.raises(DegreeError):
        pushforward_pi(XClass.of([((1, 0), 1)]))


def test_confluence_1000_trials():
    trials, failure = rewriting_confluence(1000)
    assert failure is None
    assert trials == 1000


@settings(max_examples=100, deadline=None)
@given(expressions, expressions, st.integers(-5, 5))
def test_normalize_is_linear(x, y, c):
    assert normalize(x + y.scale(c)) == normalize(x) + normalize(y).scale(c)


@settings(max_examples=100, deadline=None)
@given(expressions, st.integers(0, 10**6))
def test_normalize_idempotent(x, s):
    n = normalize(x, random.Random(s))
    assert normalize(n) == n


def test_projection_formula():
    """``K2`` and ``L`` are pulled back along ``p1``, so ``p1_*(K2 z) = K_pi p1_*(z)`` and
    ``p1_*(L z) = lambda p1_*(z)``; the ``K_pi`` part of ``p1_*(z)`` shows up in both."""
    quad = [m for m in ((a, b, c, 2 - a - b - c) for a in range(3) for b in range(3 - a)
                        for c in range(3 - a - b))]
    for z in quad:
        via_k = pushforward_p1(normalize(sym(K2) * sym(z))).as_dict()
        via_l = pushforward_p1(normalize(sym(L) * sym(z))).as_dict()
        assert via_k.get((2, 0), GPoly()) == via_l.get((1, 1), GPoly()), z


@settings(max_examples=100, deadline=None)
@given(expressions, expressions, g_coeffs)
def test_pushforwards_are_linear(x, y, c):
    def down(v):
        top3 = IClass.of((m, k) for m, k in normalize(v).terms if sum(m) == 3)
        return pushforward_pi(pushforward_p1(top3))
    assert down(x + y.scale(c)) == down(x) + down(y) * c


def test_class_W():
    W = class_W()
    g = GPoly.g()
    assert W.coefficient(K1) == g * (g - 1) / 2
    assert W.coefficient(K2) == GPoly([1])
    assert W.coefficient(D) == -(g - 1)
    assert W.coefficient(L) == GPoly([-1])


def test_lambda_coefficient_is_the_quintic():
    res = coefficient_a(with_trace=True)
    assert res.value == LAMBDA_QUINTIC
    assert res.value.integer_coeffs()
    assert any("derived" in t["rule"] for t in res.trace)


G = sp.Symbol("g")


def oracle_integral(a, b, c, e):
    """``pi_* p1_*(K1^a K2^b D^c L^e)`` from the geometry, without the rewrite table.

    ``D`` restricts to the diagonal copy of ``X`` where ``K1, K2 -> K`` and
    ``D -> -K``; off the diagonal ``p1_* p2^* beta = pi^* pi_* beta``.
    """
    on_x = {(2, 0): 12, (1, 1): 2 * G - 2, (0, 2): 0}
    if a + b + c + e != 3:
        return 0
    if c >= 1:
        k = a + b + c - 1
        return (-1) ** (c - 1) * on_x.get((k, e), 0)
    if b == 1:
        return (2 * G - 2) * on_x.get((a, e), 0)
    if b == 2:
        return 12 * on_x.get((a, e + 1), 0) if a + e == 1 else 0
    return 0


def as_gpoly(expr) -> GPoly:
    coeffs = sp.Poly(sp.expand(expr), G).all_coeffs()[::-1]
    return GPoly([Fraction(str(c)) for c in coeffs])


def test_every_top_monomial_against_geometry():
    monos = [(a, b, c, 3 - a - b - c) for a in range(4) for b in range(4 - a) for c in range(4 - a - b)]
    for m in monos:
        assert top(sym(m)) == as_gpoly(oracle_integral(*m)), m


def test_lambda_coefficient_against_sympy():
    """Expand ``S^2 W`` in sympy and integrate with the geometric table."""
    k1, k2, d, l = sp.symbols("k1 k2 d l")
    W = G * (G - 1) / 2 * k1 + k2 - (G - 1) * d - l
    poly = sp.Poly(sp.expand(W * (k1 + W) * (2 * k1 + W)), k1, k2, d, l)
    total = sum(coeff * oracle_integral(*m) for m, coeff in poly.terms())
    assert as_gpoly(total) == LAMBDA_QUINTIC


def test_S2W_needs_rewriting():
    raw = class_S2W()
    assert not all(is_normal(m) for m, _ in raw.terms)
    assert normalize(raw).degrees() == {3}
