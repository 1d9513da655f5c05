"""Truncated Laurent expansions in a local parameter."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence


class _Infinity:
    """Marker for the point at infinity of the affine line."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "oo"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def series_mul(a: Sequence, b: Sequence, n: int) -> list:
    """Product of two power series, first ``n`` coefficients."""
    if not a or not b:
        return []
    zero = a[0] * 0
    out = [zero] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def series_inv(a: Sequence, n: int) -> list:
    """Reciprocal of a power series with nonzero constant term."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / a[0]
    out = [inv0]
    for m in range(1, n):
        s = a[0] * 0
        for k in range(1, min(m, len(a) - 1) + 1):
            s = s + a[k] * out[m - k]
        out.append(-s * inv0)
    return out


def series_div(a: Sequence, b: Sequence, n: int) -> list:
    return series_mul(a, series_inv(b, n), n)


@dataclass(frozen=True)
class LocalExpansion:
    """``sum(coeffs[i] * t**(valuation + i))`` plus higher-order terms.

    ``valuation`` is ``None`` exactly for the zero function; the expansion is
    then empty.  ``len(coeffs)`` is the truncation order, so the absolute
    precision is ``valuation + len(coeffs)``.
    """

    center: Any
    valuation: int | None
    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def precision(self) -> int | None:
        if self.valuation is None:
            return None
        return self.valuation + len(self.coeffs)

    def coefficient(self, k: int):
        """Coefficient of ``t**k`` (absolute exponent)."""
        if self.valuation is None:
            raise ValueError("zero expansion has no coefficients")
        i = k - self.valuation
        if i < 0:
            return self.coeffs[0] * 0
        if i >= len(self.coeffs):
            raise IndexError(f"t^{k} is beyond the truncation order")
        return self.coeffs[i]

    def window(self, lo: int, hi: int) -> list:
        """Coefficients of ``t**lo ... t**(hi-1)``."""
        return [self.coefficient(k) for k in range(lo, hi)]

    def __mul__(self, other: "LocalExpansion") -> "LocalExpansion":
        if self.is_zero or other.is_zero:
            return LocalExpansion(self.center, None, ())
        n = min(self.order, other.order)
        return LocalExpansion(
            self.center,
            self.valuation + other.valuation,
            tuple(series_mul(self.coeffs, other.coeffs, n)),
        )

    def scale(self, c) -> "LocalExpansion":
        if c == 0 or self.is_zero:
            return LocalExpansion(self.center, None, ())
        return LocalExpansion(self.center, self.valuation, tuple(x * c for x in self.coeffs))

    def inverse(self) -> "LocalExpansion":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero expansion")
        return LocalExpansion(self.center, -self.valuation, tuple(series_inv(self.coeffs, self.order)))

    def __pow__(self, n: int) -> "LocalExpansion":
        if n < 0:
            return self.inverse() ** (-n)
        one = self.coeffs[0] * 0 + 1 if self.coeffs else 1
        result = LocalExpansion(self.center, 0, (one,) + (one * 0,) * (self.order - 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


def normalized(center, coeffs: Sequence, valuation: int) -> LocalExpansion:
    """Strip leading zeros of a raw coefficient list starting at ``valuation``.

    An all-zero list is reported as the zero function; callers that need to
    tell "zero" from "vanishes beyond the truncation" must check precision
    themselves.
    """
    for i, c in enumerate(coeffs):
        if c != 0:
            return LocalExpansion(center, valuation + i, tuple(coeffs[i:]))
    return LocalExpansion(center, None, ())
