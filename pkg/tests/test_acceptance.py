"""The seven acceptance criteria, each printed as one PASS/FAIL line with its runtime.

A criterion passes only when every case is exact and the runtime is under
its budget.
"""

import time

from properties import PROPERTY_SEED, group_law_associativity, rewriting_confluence, wronskian_order_identity
from s2wcheck.elliptic import verify_elliptic
from s2wcheck.exact import LAMBDA_QUINTIC
from s2wcheck.exact.gpoly import GPoly
from s2wcheck.families import expected_ratio, solve_relations
from s2wcheck.flag import flag_check
from s2wcheck.intersect import coefficient_a
from s2wcheck.p1series import (
    EXTRA_POINTS,
    check_double_point_pencil,
    check_point_removal,
    check_twisted_series,
    twist_family,
)
from s2wcheck.report import Report


def announce(capsys, number: int, title: str, ok: bool, elapsed: float, budget: float | None, detail: str = ""):
    within = budget is None or elapsed < budget
    verdict = "PASS" if ok and within else "FAIL"
    limit = f" (budget {budget:g}s)" if budget is not None else ""
    extra = f"; {detail}" if detail else ""
    with capsys.disabled():
        print(f"\n[criterion {number}] {verdict}: {title} in {elapsed:.2f}s{limit}{extra}")
    return ok and within


def failures(rep: Report, limit: int = 5) -> str:
    bad = rep.failures()
    return ", ".join(c.id for c in bad[:limit]) + (" ..." if len(bad) > limit else "")


def test_criterion_1_lambda_quintic(capsys):
    t0 = time.perf_counter()
    a = coefficient_a()
    elapsed = time.perf_counter() - t0
    target = GPoly([-54, 174, -207, 129, -51, 9])
    ok = a == target == LAMBDA_QUINTIC and a.integer_coeffs() == [-54, 174, -207, 129, -51, 9]
    assert announce(capsys, 1, f"lambda coefficient = {a}", ok, elapsed, 1)


def test_criterion_2_ratios(capsys):
    t0 = time.perf_counter()
    bad = []
    for g in range(5, 22):
        sol = solve_relations(g)
        for l in range(2, g // 2 + 1):
            if sol.ratio(l) != expected_ratio(g, l):
                bad.append((g, l, sol.ratio(l)))
    elapsed = time.perf_counter() - t0
    assert announce(capsys, 2, "a_l/a_1 = l(g-l)/(g-1) for g = 5..21", not bad, elapsed, 1, str(bad[:3]) if bad else "")


def test_criterion_3_twisted_series(capsys):
    t0 = time.perf_counter()
    rep = Report("criterion-3")
    family = list(twist_family(4, 3))
    for tw in family:
        rep.extend(check_twisted_series(tw))
    elapsed = time.perf_counter() - t0
    assert announce(capsys, 3, f"orders, weights and Plucker totals for {len(family)} twists "
                    f"({len(rep.cases)} cases)", rep.ok, elapsed, 30, failures(rep))


def test_criterion_4_pencils_and_point_removal(capsys):
    t0 = time.perf_counter()
    rep = Report("criterion-4")
    for tw in twist_family(4, 3):
        rep.extend(check_double_point_pencil(tw, samples=25, seed=PROPERTY_SEED))
        for P in EXTRA_POINTS:
            rep.extend(check_point_removal(tw, P))
    elapsed = time.perf_counter() - t0
    assert announce(capsys, 4, f"eps in {{0,1}}, sum <= 1, simple exterior points ({len(rep.cases)} cases)",
                    rep.ok, elapsed, 60, failures(rep))


def test_criterion_5_elliptic(capsys):
    t0 = time.perf_counter()
    rep = verify_elliptic((3, 5, 7, 9), samples=25, seed=PROPERTY_SEED)
    elapsed = time.perf_counter() - t0
    assert announce(capsys, 5, f"orders at A, weight bounds, torsion argument ({len(rep.cases)} cases)",
                    rep.ok, elapsed, 60, failures(rep))


def test_criterion_6_flag_limits(capsys):
    t0 = time.perf_counter()
    rep = flag_check((3, 5, 7, 9), (1, 2))
    elapsed = time.perf_counter() - t0
    assert announce(capsys, 6, f"node identities and multiplicity 0 after parity ({len(rep.cases)} cases)",
                    rep.ok, elapsed, 30, failures(rep))


def test_criterion_7_property_suites(capsys):
    t0 = time.perf_counter()
    results = []
    for name, runner, minimum in (
        ("confluence", lambda: rewriting_confluence(1000), 1000),
        ("associativity", lambda: group_law_associativity(1000), 1000),
        ("Wronskian order at twist points, infinity and 3 generic points", lambda: wronskian_order_identity(60), 60),
    ):
        trials, failure = runner()
        results.append((name, trials, failure, trials >= minimum and failure is None))
    elapsed = time.perf_counter() - t0
    summary = ", ".join(f"{name} {trials} trials {0 if failure is None else 1} failures"
                        for name, trials, failure, _ in results)
    problems = "; ".join(f for _, _, f, _ in results if f)
    assert announce(capsys, 7, f"seed {PROPERTY_SEED}: {summary}", all(ok for *_, ok in results),
                    elapsed, None, problems)
