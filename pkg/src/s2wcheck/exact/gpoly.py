"""Polynomials in the genus parameter ``g``.

Coefficients are stored as rationals so that binomials like ``g(g-1)/2`` are
representable; :meth:`GPoly.is_integral` and :meth:`GPoly.integer_coeffs`
check that a final answer has integer coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .poly import Poly


class GPoly(Poly):
    __slots__ = ()

    @classmethod
    def g(cls) -> "GPoly":
        return cls([0, 1])

    @staticmethod
    def _wrap(p) -> "GPoly":
        if isinstance(p, Poly) and not isinstance(p, GPoly):
            return GPoly._raw(p.coeffs)
        return p

    def __add__(self, other):
        return self._wrap(super().__add__(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(super().__sub__(other))

    def __rsub__(self, other):
        return self._wrap(super().__rsub__(other))

    def __neg__(self):
        return self._wrap(super().__neg__())

    def __mul__(self, other):
        return self._wrap(super().__mul__(other))

    __rmul__ = __mul__

    def __pow__(self, n):
        return self._wrap(super().__pow__(n))

    def __truediv__(self, other):
        return self._wrap(super().__truediv__(other))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ArithmeticError(f"non-integral coefficients in {self}")
        return [int(c) for c in self.coeffs]

    def eval(self, g0: Union[int, Fraction]) -> Union[int, Fraction]:
        v = self(Fraction(g0))
        return int(v) if isinstance(v, Fraction) and v.denominator == 1 else v

    def __repr__(self):
        return f"GPoly({self.to_str('g')})"

    def __str__(self):
        return self.to_str("g")


def gpoly(coeffs_high_first: Iterable[int]) -> GPoly:
    """Build from coefficients listed highest power first (the way one reads them)."""
    return GPoly(reversed(list(coeffs_high_first)))


def gpoly_eval(p: GPoly, g0: int):
    return p.eval(g0)


# 9g^5 - 51g^4 + 129g^3 - 207g^2 + 174g - 54
LAMBDA_QUINTIC = gpoly([9, -51, 129, -207, 174, -54])
