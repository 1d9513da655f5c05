"""Divisor-class arithmetic on the fibre square ``Y = X x_T X`` of a family of curves.

Monomials are exponent tuples ``(a, b, c, d)`` of

    K1 = K_{p1},  K2 = K_{p2},  D = diagonal,  L = p1^* pi^* lambda,

with coefficients that are polynomials in ``g``.  Classes are reduced with a
small set of one-step rewrite rules, pushed forward along ``p1`` to the
surface ``X`` (monomials in ``K_pi`` and ``pi^* lambda``) and then along
``pi`` to a multiple of ``lambda`` on the base.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .exact.gpoly import GPoly

Mono = tuple[int, int, int, int]
K1: Mono = (1, 0, 0, 0)
K2: Mono = (0, 1, 0, 0)
D: Mono = (0, 0, 1, 0)
L: Mono = (0, 0, 0, 1)
ONE: Mono = (0, 0, 0, 0)
SYMBOLS = ("K1", "K2", "D", "L")
DIM_Y = 3


class DegreeError(ValueError):
    pass


def _g(c) -> GPoly:
    return c if isinstance(c, GPoly) else GPoly([c])


def mono_str(m: Mono) -> str:
    parts = []
    for sym, e in zip(SYMBOLS, m):
        if e == 1:
            parts.append(sym)
        elif e > 1:
            parts.append(f"{sym}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class IClass:
    """A finite sum ``sum coeff(g) * K1^a K2^b D^c L^d``; zero coefficients are dropped."""

    terms: tuple[tuple[Mono, GPoly], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[Mono, object] | Iterable[tuple[Mono, object]]) -> "IClass":
        acc: dict[Mono, GPoly] = {}
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != 4 or min(m) < 0:
                raise ValueError(f"bad monomial {m}")
            acc[m] = acc.get(m, GPoly()) + _g(c)
        return cls(tuple(sorted((m, c) for m, c in acc.items() if not c.is_zero())))

    @classmethod
    def symbol(cls, m: Mono, coeff=1) -> "IClass":
        return cls.of({m: coeff})

    def as_dict(self) -> dict[Mono, GPoly]:
        return dict(self.terms)

    def coefficient(self, m: Mono) -> GPoly:
        return self.as_dict().get(m, GPoly())

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(m) for m, _ in self.terms}

    def __add__(self, other: "IClass") -> "IClass":
        return IClass.of(list(self.terms) + list(other.terms))

    def __neg__(self) -> "IClass":
        return IClass(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "IClass") -> "IClass":
        return self + (-other)

    def scale(self, c) -> "IClass":
        return IClass.of((m, v * _g(c)) for m, v in self.terms)

    def __mul__(self, other: "IClass") -> "IClass":
        return iclass_mul(self, other)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{mono_str(m)}" for m, c in self.terms)


def iclass_mul(x: IClass, y: IClass) -> IClass:
    """Free commutative product; no relations applied."""
    out = []
    for m1, c1 in x.terms:
        for m2, c2 in y.terms:
            out.append((tuple(a + b for a, b in zip(m1, m2)), c1 * c2))
    return IClass.of(out)


# -- rewriting ------------------------------------------------------------------
#
# Each rule maps a monomial to a list of (sign, monomial) or returns None when
# it does not apply.


def _diag_sq_k1(m: Mono):
    a, b, c, d = m
    if c >= 2:
        return [(-1, (a + 1, b, c - 1, d))]


def _diag_sq_k2(m: Mono):
    a, b, c, d = m
    if c >= 2:
        return [(-1, (a, b + 1, c - 1, d))]


def _k2_on_diag(m: Mono):
    a, b, c, d = m
    if c >= 1 and b >= 1:
        return [(1, (a + 1, b - 1, c, d))]


def _k1_cubed(m: Mono):
    return [] if m[0] >= 3 else None


def _k2_cubed(m: Mono):
    return [] if m[1] >= 3 else None


def _lambda_sq(m: Mono):
    return [] if m[3] >= 2 else None


def _too_big(m: Mono):
    return [] if sum(m) > DIM_Y else None


RULES: tuple[tuple[str, Callable], ...] = (
    ("D^2 -> -K1*D", _diag_sq_k1),
    ("D^2 -> -K2*D", _diag_sq_k2),
    ("K2*D -> K1*D", _k2_on_diag),
    ("K1^3 -> 0", _k1_cubed),
    ("K2^3 -> 0", _k2_cubed),
    ("L^2 -> 0", _lambda_sq),
    ("degree > 3 -> 0", _too_big),
)


def is_normal(m: Mono) -> bool:
    return all(rule(m) is None for _, rule in RULES)


def normalize(x: IClass, rng: random.Random | None = None, max_steps: int = 100000) -> IClass:
    """Rewrite to the unique normal form.

    Without ``rng`` the first applicable rule (in table order) is used on the
    smallest reducible monomial.  With ``rng`` both the monomial and the rule
    are chosen at random at every step, which is how confluence is tested.
    """
    terms = dict(x.as_dict())
    for _ in range(max_steps):
        reducible = [(m, r) for m in terms for r in range(len(RULES)) if RULES[r][1](m) is not None]
        if not reducible:
            return IClass.of(terms)
        if rng is None:
            m, r = min(reducible)
        else:
            m, r = reducible[rng.randrange(len(reducible))]
        coeff = terms.pop(m)
        for sign, m2 in RULES[r][1](m):
            new = terms.get(m2, GPoly()) + coeff * sign
            if new.is_zero():
                terms.pop(m2, None)
            else:
                terms[m2] = new
    raise RuntimeError("rewriting did not terminate")


# -- pushforwards -------------------------------------------------------------------


@dataclass(frozen=True)
class XClass:
    """Classes on the surface ``X``: monomials ``K_pi^e * (pi^* lambda)^f``."""

    terms: tuple[tuple[tuple[int, int], GPoly], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[tuple[int, int], object]]) -> "XClass":
        acc: dict[tuple[int, int], GPoly] = {}
        for m, c in items:
            if m[1] >= 2:
                continue  # (pi^* lambda)^2 = 0, pulled back from a curve
            acc[m] = acc.get(m, GPoly()) + _g(c)
        return cls(tuple(sorted((m, c) for m, c in acc.items() if not c.is_zero())))

    def as_dict(self):
        return dict(self.terms)

    def __add__(self, other: "XClass") -> "XClass":
        return XClass.of(list(self.terms) + list(other.terms))

    def scale(self, c) -> "XClass":
        return XClass.of((m, v * _g(c)) for m, v in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = lambda e, f: "*".join(
            p for p in (("Kpi" if e == 1 else f"Kpi^{e}") if e else "",
                        ("lam" if f == 1 else f"lam^{f}") if f else "") if p) or "1"
        return " + ".join(f"({c})*{names(*m)}" for m, c in self.terms)


def pushforward_p1_monomial(m: Mono) -> tuple[XClass, str]:
    """Push one normal-form degree-3 monomial down to ``X``; returns the class and the rule used."""
    if sum(m) != DIM_Y:
        raise DegreeError(f"pushforward_p1 needs degree 3, got {mono_str(m)}")
    if not is_normal(m):
        raise DegreeError(f"monomial {mono_str(m)} is not in normal form")
    a, b, c, d = m
    two_g_minus_2 = GPoly([-2, 2])
    if c == 1:
        # b == 0 in normal form; D restricted to itself is X, K1|D = K_pi
        return XClass.of([((a, d), 1)]), "p1_*(K1^a*D) = K_pi^a"
    if a == 1:
        return XClass.of([((b, d), two_g_minus_2)]), "p1_*(K1) = 2g-2, projection formula"
    if a == 2:
        return XClass.of([((b, d + 1), 12)]), "p1_*(K1^2) = pi^*pi_*(K_pi^2) = 12 pi^*lambda"
    return XClass(), "pure pullback along p1 -> 0"


def pushforward_p1(x: IClass, trace: list | None = None) -> XClass:
    out = XClass()
    for m, c in x.terms:
        img, why = pushforward_p1_monomial(m)
        img = img.scale(c)
        if trace is not None:
            trace.append({"monomial": mono_str(m), "coefficient": str(c), "rule": why, "image": str(img)})
        out = out + img
    return out


PI_TABLE = {
    (2, 0): (GPoly([12]), "pi_*(K_pi^2) = 12 lambda"),
    (1, 1): (GPoly([-2, 2]), "pi_*(K_pi * pi^*lambda) = (2g-2) lambda [derived: projection formula "
                             "with pi_*(K_pi) = 2g-2; not a listed rule]"),
    (0, 2): (GPoly(), "(pi^*lambda)^2 = 0"),
}


def pushforward_pi(x: XClass, trace: list | None = None) -> GPoly:
    """The coefficient of ``lambda`` in ``pi_*`` of a degree-2 class on ``X``."""
    total = GPoly()
    for m, c in x.terms:
        if sum(m) != 2:
            raise DegreeError(f"pushforward_pi needs degree 2, got K_pi^{m[0]} lam^{m[1]}")
        val, why = PI_TABLE[m]
        if trace is not None:
            trace.append({"monomial": f"K_pi^{m[0]} lam^{m[1]}", "coefficient": str(c), "rule": why,
                          "value": str(c * val)})
        total = total + c * val
    return total


# -- the S^2 W computation ---------------------------------------------------------


def class_W() -> IClass:
    """``C(g,2) K1 + K2 - (g-1) D - L``."""
    g = GPoly.g()
    return IClass.of({K1: g * (g - 1) / 2, K2: 1, D: -(g - 1), L: -1})


def class_S2W() -> IClass:
    """``W (K1 + W)(2 K1 + W)``, before normalization."""
    W = class_W()
    k1 = IClass.symbol(K1)
    return W * (k1 + W) * (k1.scale(2) + W)


@dataclass
class LambdaCoefficient:
    value: GPoly
    normal_form: IClass
    surface_class: XClass
    trace: list = field(default_factory=list)


def coefficient_a(with_trace: bool = False) -> GPoly | LambdaCoefficient:
    """``pi_* p1_*[S^2 W]`` as a multiple of ``lambda``; integrality is asserted."""
    nf = normalize(class_S2W())
    bad = [mono_str(m) for m in nf.as_dict() if sum(m) != DIM_Y]
    if bad:
        raise DegreeError(f"[S^2 W] has monomials of wrong degree: {bad}")
    trace: list = []
    on_x = pushforward_p1(nf, trace)
    a = pushforward_pi(on_x, trace)
    a.integer_coeffs()
    if with_trace:
        return LambdaCoefficient(a, nf, on_x, trace)
    return a
