"""Exact row reduction.

Matrices are lists of rows.  Entries may be any exact field element that
supports ``+ - * /`` and comparison with ``0``: :class:`fractions.Fraction`
for the rationals, :class:`~s2wcheck.exact.modp.ModP` for prime fields.
Integers are promoted to ``Fraction`` on entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def _promote(x):
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class RREF:
    rank: int
    pivots: tuple[int, ...]
    rows: tuple[tuple, ...]


def rref(rows: Sequence[Sequence]) -> RREF:
    """Reduced row-echelon form.

    Returns the rank, the pivot column of each nonzero row and the reduced
    matrix (zero rows kept at the bottom, so the shape is preserved).
    """
    m = [[_promote(x) for x in row] for row in rows]
    if not m:
        return RREF(0, (), ())
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [a - f * b for a, b in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return RREF(r, tuple(pivots), tuple(tuple(row) for row in m))


def rank(rows: Sequence[Sequence]) -> int:
    return rref(rows).rank


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : M v = 0}``.

    ``ncols`` is required when ``rows`` is empty (every vector is then in the
    kernel).
    """
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        one, zero = Fraction(1), Fraction(0)
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red = rref(rows)
    n = len(red.rows[0])
    zero = red.rows[0][0] * 0
    one = zero + 1
    free = [c for c in range(n) if c not in red.pivots]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, p in enumerate(red.pivots):
            v[p] = -red.rows[i][f]
        basis.append(v)
    return basis


def left_nullspace(rows: Sequence[Sequence], nrows: int | None = None) -> list[list]:
    """Basis of ``{c : c M = 0}`` (row-vector kernel)."""
    if not rows:
        return nullspace([], nrows)
    if not rows[0]:
        return nullspace([], len(rows))
    return nullspace(transpose(rows))


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def row_space_basis(rows: Sequence[Sequence]) -> list[list]:
    """The nonzero rows of the reduced echelon form."""
    red = rref(rows)
    return [list(r) for r in red.rows[: red.rank]]


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant over the rationals (clears denominators row by row)."""
    from math import lcm

    scale = Fraction(1)
    ints = []
    for row in m:
        row = [Fraction(x) for x in row]
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        ints.append([int(x * d) for x in row])
        scale /= d
    return det_bareiss(ints) * scale
