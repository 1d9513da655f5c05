"""Boundary degrees of the flag-curve test families and the relations they force.

For the family ``pi_i`` (``g >= 5``, ``2 <= i <= [g/2]``) the only nonzero
boundary degrees come from five contributions

    delta_1: -2,  delta_2: +1,  delta_{i-1}: -1,  delta_i: +2,  delta_{i+1}: -1.

Indices are folded by ``delta_l = delta_{g-l}`` into ``1 .. [g/2]`` and
contributions landing in the same slot are added.  This reproduces the
special rows at ``i = g/2`` (g even) and ``i = (g-1)/2`` (g odd) and the
overlaps at ``i = 2, 3``.

A divisor ``a lambda - sum a_l delta_l`` that misses every family has degree
zero on each, so ``sum_l deg(delta_l) a_l = 0`` for every row.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exact.linalg import nullspace, rref
from .report import Report

CONTRIBUTIONS = (("delta_1", 1, -2), ("delta_2", 2, 1), ("delta_{i-1}", -1, -1),
                 ("delta_i", 0, 2), ("delta_{i+1}", 1, -1))


class RelationError(ValueError):
    pass


def fold(l: int, g: int) -> int:
    """``delta_l`` and ``delta_{g-l}`` are the same boundary divisor."""
    return min(l, g - l)


@dataclass(frozen=True)
class DegreeRow:
    """Degrees ``(lambda, delta_0, delta_1, ..., delta_[g/2])`` on the family ``pi_i``."""

    g: int
    i: int
    degrees: tuple[int, ...]
    trace: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.degrees) != self.g // 2 + 2:
            raise RelationError("wrong number of slots")
        if self.degrees[0] != 0 or self.degrees[1] != 0:
            raise RelationError("lambda and delta_0 degrees must vanish")

    @property
    def boundary(self) -> tuple[int, ...]:
        """The ``delta_1 .. delta_[g/2]`` part."""
        return self.degrees[2:]

    def equation(self) -> str:
        terms = []
        for l, c in enumerate(self.boundary, start=1):
            if c:
                terms.append(f"{c:+d}*a{l}")
        return " ".join(terms) + " = 0"


def degree_row(g: int, i: int) -> DegreeRow:
    if g < 5:
        raise RelationError(f"g must be at least 5, got {g}")
    if not 2 <= i <= g // 2:
        raise RelationError(f"i must lie in [2, {g // 2}], got {i}")
    slots = [0] * (g // 2 + 2)
    trace = []
    for name, where, deg in CONTRIBUTIONS:
        l = where if name in ("delta_1", "delta_2") else i + where
        f = fold(l, g)
        if f != l:
            trace.append(f"{name} = delta_{l} folded to delta_{f}")
        slots[f + 1] += deg
    return DegreeRow(g, i, tuple(slots), tuple(trace))


@dataclass(frozen=True)
class RelationSolution:
    g: int
    ratios: tuple[Fraction, ...]  # a_l / a_1 for l = 1 .. [g/2]
    nullity: int
    matrix: tuple[tuple[int, ...], ...]

    def ratio(self, l: int) -> Fraction:
        return self.ratios[l - 1]


def relation_matrix(g: int) -> list[list[int]]:
    return [list(degree_row(g, i).boundary) for i in range(2, g // 2 + 1)]


def solve_relations(g: int) -> RelationSolution:
    """Solve the homogeneous system, normalized by ``a_1 = 1``."""
    M = relation_matrix(g)
    n = g // 2
    kernel = nullspace(M, n)
    if len(kernel) != 1:
        raise RelationError(f"g={g}: solution space has dimension {len(kernel)}; matrix {M}")
    sub = [row[1:] for row in M]
    if rref(sub).rank != n - 1:
        raise RelationError(f"g={g}: system in a_2..a_{n} has rank {rref(sub).rank}; matrix {M}")
    v = kernel[0]
    if v[0] == 0:
        raise RelationError(f"g={g}: solutions force a_1 = 0")
    ratios = tuple(Fraction(x) / v[0] for x in v)
    return RelationSolution(g, ratios, len(kernel), tuple(tuple(r) for r in M))


def expected_ratio(g: int, l: int) -> Fraction:
    return Fraction(l * (g - l), g - 1)


def verify_ratio_formula(g_max: int, g_min: int = 5) -> Report:
    t0 = time.perf_counter()
    if g_max < 5:
        raise RelationError("g_max must be at least 5")
    rep = Report("solve-relations")
    tag = "boundary ratios"
    for g in range(max(5, g_min), g_max + 1):
        sol = solve_relations(g)
        expected = [expected_ratio(g, l) for l in range(1, g // 2 + 1)]
        for l in range(2, g // 2 + 1):
            rep.check(f"g={g:02d}/a{l:02d}/a01", {"g": g, "l": l}, expected[l - 1], sol.ratio(l), tag,
                      certificate={"matrix": [list(r) for r in sol.matrix], "expected": expected,
                                   "computed": list(sol.ratios)})
        rep.check(f"g={g:02d}/nullity", {"g": g}, 1, sol.nullity, tag)
        for i in range(2, g // 2 + 1):
            row = degree_row(g, i)
            rep.check(f"g={g:02d}/i={i:02d}/formula-satisfies-row", {"g": g, "i": i}, 0,
                      sum(c * a for c, a in zip(row.boundary, expected)), tag)
    rep.runtime = time.perf_counter() - t0
    return rep
