"""Rational functions in one variable, local expansions and Wronskians."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .linalg import det_bareiss
from .poly import Poly, Scalar, lagrange_newton
from .series import INFINITY, LocalExpansion, series_div


class RatFn:
    """Quotient of polynomials, kept with a monic denominator and coprime parts."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Scalar, den: Poly | Scalar = 1, *, reduced: bool = False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly.const(1)
        elif not reduced:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lead
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFn is immutable")

    @classmethod
    def x(cls) -> "RatFn":
        return cls(Poly.x())

    @classmethod
    def pole(cls, center: Scalar, k: int) -> "RatFn":
        """``1 / (x - center)**k``."""
        return cls(Poly.const(1), Poly.linear_power(center, k), reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    @staticmethod
    def _coerce(other) -> "RatFn":
        if isinstance(other, RatFn):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RatFn(other, reduced=True)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RatFn":
        if n < 0:
            return RatFn(self.den ** (-n), self.num ** (-n))
        return RatFn(self.num**n, self.den**n, reduced=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "RatFn":
        n, d = self.num, self.den
        return RatFn(n.derivative() * d - n * d.derivative(), d * d)

    def at_infinity(self) -> "RatFn":
        """The same function in the chart ``u = 1/x``, as a function of ``u``."""
        if self.is_zero():
            return self
        shift = self.den.degree - self.num.degree
        num, den = self.num.reverse(), self.den.reverse()
        if shift >= 0:
            num = num * Poly.monomial(shift)
        else:
            den = den * Poly.monomial(-shift)
        return RatFn(num, den)

    def __repr__(self):
        if self.is_poly():
            return f"RatFn({self.num.to_str()})"
        return f"RatFn(({self.num.to_str()}) / ({self.den.to_str()}))"


def local_expand(f: RatFn, center, order: int) -> LocalExpansion:
    """First ``order`` Laurent coefficients of ``f`` at ``center``.

    ``center`` is a rational number or :data:`INFINITY`; at infinity the
    local parameter is ``u = 1/x``.  The zero function yields an expansion
    whose ``valuation`` is ``None``.
    """
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    if f.is_zero():
        return LocalExpansion(center, None, ())
    if center is INFINITY:
        g = f.at_infinity()
        e = local_expand(g, 0, order)
        return LocalExpansion(INFINITY, e.valuation, e.coeffs)
    num = f.num.shift(center)
    den = f.den.shift(center)
    vn, vd = num.valuation(), den.valuation()
    coeffs = series_div(list(num.coeffs[vn:]), list(den.coeffs[vd:]), order)
    return LocalExpansion(Fraction(center), vn - vd, tuple(coeffs))


def valuation_at(f: RatFn, center) -> int | None:
    """Order of zero (positive) or pole (negative) of ``f`` at ``center``."""
    if f.is_zero():
        return None
    if center is INFINITY:
        return f.den.degree - f.num.degree
    return f.num.shift(center).valuation() - f.den.shift(center).valuation()


# -- Wronskians ---------------------------------------------------------------


def _echelon_by_degree(polys: Sequence[Poly]) -> tuple[list[Poly], Fraction]:
    """Row-reduce so that the polynomials have pairwise distinct degrees.

    Returns the new list ``E = T * polys`` and ``det(T)``; if the input is
    linearly dependent, returns an empty list.
    """
    k = len(polys)
    n = max((p.degree for p in polys), default=-1) + 1
    rows = [[p[i] for i in range(n - 1, -1, -1)] for p in polys]  # highest degree first
    detT = Fraction(1)
    r = 0
    for c in range(n):
        if r == k:
            break
        piv = next((i for i in range(r, k) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            detT = -detT
        for i in range(r + 1, k):
            f = rows[i][c]
            if f != 0:
                f = f / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    if r < k:
        return [], detT
    return [Poly(reversed(row)) for row in rows], detT


def _taylor_head(coeffs: Sequence[int], x0: int, k: int) -> list[int]:
    """First ``k`` Taylor coefficients of an integer polynomial at ``x0``."""
    n = len(coeffs)
    out = []
    for i in range(k):
        s = 0
        for m in range(i, n):
            a = coeffs[m]
            if a:
                s += a * comb(m, i) * x0 ** (m - i)
        out.append(s)
    return out


def poly_wronskian(polys: Sequence[Poly]) -> Poly:
    """Wronskian ``det(p_j^(i))`` of polynomials, computed exactly.

    The input is first brought to distinct degrees ``d_1 > ... > d_k`` so the
    result has degree exactly ``sum(d_i) - k(k-1)/2``; it is then evaluated at
    that many plus one integer points (integer Bareiss determinants) and
    interpolated.
    """
    k = len(polys)
    if k == 0:
        raise ValueError("Wronskian of an empty family")
    ech, detT = _echelon_by_degree(polys)
    if not ech:
        return Poly()
    degs = [p.degree for p in ech]
    target = sum(degs) - k * (k - 1) // 2
    scales = [p.content_scale() for p in ech]
    int_coeffs = [[int(c * s) for c in p.coeffs] for p, s in zip(ech, scales)]
    xs = list(range(target + 1))
    ys = []
    for x0 in xs:
        cols = [_taylor_head(cf, x0, k) for cf in int_coeffs]
        ys.append(det_bareiss([[cols[j][i] for j in range(k)] for i in range(k)]))
    w = lagrange_newton(xs, ys)
    if w.degree != target:
        raise ArithmeticError(f"Wronskian degree {w.degree}, expected {target}")
    fact = 1
    for i in range(k):
        fact *= factorial(i)
    denom = detT
    for s in scales:
        denom *= s
    return w * (Fraction(fact) / denom)


def wronskian(fs: Sequence[RatFn]) -> RatFn:
    """``det`` of the matrix with rows ``fs, fs', ..., fs^(k-1)``.

    Linearly dependent input gives the zero function.
    """
    if not fs:
        raise ValueError("Wronskian of an empty family")
    common = Poly.const(1)
    for f in fs:
        common = common * f.den.exact_div(common.gcd(f.den))
    nums = [f.num * common.exact_div(f.den) for f in fs]
    w = poly_wronskian(nums)
    return RatFn(w, common ** len(fs))
