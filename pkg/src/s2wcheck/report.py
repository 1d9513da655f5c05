"""Verification reports: one record per checked case, JSON-serializable."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact.poly import Poly
from .exact.series import INFINITY


def canon(x: Any) -> Any:
    """Render a value as plain JSON data with a stable textual form."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Poly):
        return str(x)
    if x is INFINITY:
        return "oo"
    if isinstance(x, dict):
        return {str(k): canon(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [canon(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((canon(v) for v in x), key=str)
    return str(x)


@dataclass
class Case:
    id: str
    input: Any
    expected: Any
    computed: Any
    tag: str
    ok: bool
    certificate: dict | None = None

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "input": canon(self.input),
            "expected": canon(self.expected),
            "computed": canon(self.computed),
            "tag": self.tag,
            "ok": self.ok,
        }
        if self.certificate is not None:
            d["certificate"] = canon(self.certificate)
        return d


@dataclass
class Report:
    suite: str
    cases: list[Case] = field(default_factory=list)
    seed: int | None = None
    runtime: float | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if all(c.ok for c in self.cases) else "fail"

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def check(self, id: str, input: Any, expected: Any, computed: Any, tag: str,
              ok: bool | None = None, certificate: dict | None = None) -> bool:
        """Record a case; ``ok`` defaults to exact equality of expected and computed."""
        if ok is None:
            ok = expected == computed
        self.cases.append(Case(id, input, expected, computed, tag, bool(ok),
                               None if ok else certificate))
        return bool(ok)

    def extend(self, other: "Report", prefix: str | None = None) -> None:
        p = prefix if prefix is not None else other.suite
        for c in other.cases:
            self.cases.append(Case(f"{p}/{c.id}", c.input, c.expected, c.computed,
                                   c.tag, c.ok, c.certificate))
        self.notes.extend(f"[{p}] {n}" for n in other.notes)

    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.ok]

    def to_dict(self, include_runtime: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "status": self.status,
            "cases": [c.to_dict() for c in sorted(self.cases, key=lambda c: c.id)],
            "seed": self.seed,
        }
        if self.notes:
            d["notes"] = list(self.notes)
        if include_runtime and self.runtime is not None:
            d["runtime"] = round(self.runtime, 3)
        return d

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_dict(include_runtime), indent=2, sort_keys=False) + "\n"

    def summary(self) -> str:
        n = len(self.cases)
        bad = len(self.failures())
        line = f"{self.suite}: {self.status.upper()} ({n - bad}/{n} cases)"
        if self.runtime is not None:
            line += f" in {self.runtime:.2f}s"
        return line
