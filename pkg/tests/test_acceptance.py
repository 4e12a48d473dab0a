"""Exit criteria for the package, one test per criterion.

Each test prints a PASS/FAIL line; the terminal summary repeats them.
"""

from fractions import Fraction

import pytest

from threegap.cf import PeriodicSource, SurdSource, build_table, constant_type_bound, rule_source
from threegap.exact import surd_normalize
from threegap.gaps import BRANCH_FULL, decompose, gap_structure, ratio_scan
from threegap.oracle import iter_partitions, oracle_extremes
from threegap.verify import verify

PHI = surd_normalize(1, 1, 5, 2)
SQRT2 = surd_normalize(0, 1, 2, 1)
SQRT3 = surd_normalize(0, 1, 3, 1)
HALF13 = surd_normalize(1, 1, 13, 2)
TEST_ALPHAS = [PHI, SQRT2, SQRT3, HALF13]


def report(n, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    assert ok, detail


def test_criterion_1_oracle_equivalence():
    details = []
    ok = True
    for alpha in TEST_ALPHAS:
        rep = verify(SurdSource(alpha), 2000)
        ok &= rep.ok and rep.exact and rep.checked == 2000
        details.append(f"{alpha}: {len(rep.disagreements)} disagreements")
    report(1, ok, "; ".join(details))


def test_criterion_2_structural_identities():
    failures = []
    for alpha in TEST_ALPHAS:
        t = build_table(alpha, 62)
        for m in range(1, 2001):
            gs = gap_structure(m, t)
            _, k, r, s = gs.decomposition
            if sum(e.count for e in gs.entries) != m + 1:
                failures.append(f"{alpha} m={m}: count sum")
            if sum((e.length * e.count for e in gs.entries), 0 * alpha) - 1 != 0:
                failures.append(f"{alpha} m={m}: measure")
            if t.eta(k - 1) - r * t.eta(k) - (t.eta(k + 1) + (t.a(k + 1) - r) * t.eta(k)) != 0:
                failures.append(f"{alpha} m={m}: Remark 1(a)")
        for n in range(0, 41):
            if t.eta(n - 1) - t.a(n + 1) * t.eta(n) - t.eta(n + 1) != 0:
                failures.append(f"{alpha} n={n}: eta recurrence")
        for n in range(0, 61):
            if t.p(n) * t.q(n - 1) - t.p(n - 1) * t.q(n) != (-1) ** (n - 1):
                failures.append(f"{alpha} n={n}: determinant")
            if t.signed_error(n).sign() * t.signed_error(n + 1).sign() != -1:
                failures.append(f"{alpha} n={n}: sign alternation")
    report(2, not failures, failures[0] if failures else "all identities exact to surd zero")


def test_criterion_3_uniqueness():
    failures = []
    for alpha in TEST_ALPHAS:
        t = build_table(alpha, 20)
        for m in range(1, 501):
            found = []
            k = 0
            while t.q(k) <= m:
                for r in range(1, t.a(k + 1) + 1):
                    for s in range(t.q(k)):
                        if r * t.q(k) + t.q(k - 1) + s == m:
                            found.append((k, r, s))
                k += 1
            if found != [tuple(decompose(m, t))[1:]]:
                failures.append(f"{alpha} m={m}: {found}")
    report(3, not failures, failures[0] if failures else "exactly one (k, r, s) for every m <= 500")


def test_criterion_4_bounded_direction():
    phi_scan = ratio_scan(build_table(PHI, 0), 10**4)
    phi_sq = PHI * PHI
    sup_iv = phi_scan.sup.to_interval(128)
    target = Fraction(26180339887498948482, 10**19)  # phi^2 to 20 digits
    close = abs(sup_iv.mid - target) < Fraction(1, 10**12)
    exact = phi_scan.sup == phi_sq
    below3 = phi_scan.sup < 3
    # oracle confirmation of the supremum on m <= 2000
    oracle_sup = max(
        (lambda e: e[0] / e[1])(oracle_extremes(s)) for s in iter_partitions(PHI, 2000))
    sqrt2_scan = ratio_scan(build_table(SQRT2, 0), 10**4)
    bound = constant_type_bound(SurdSource(SQRT2), 100)
    sqrt2_ok = bound == (2, True) and all(p.ratio < bound.bound + 2 for p in sqrt2_scan.points)
    ok = close and exact and below3 and oracle_sup == phi_sq and sqrt2_ok
    report(4, ok, f"phi sup={float(sup_iv.mid):.12f} (exact phi^2: {exact}, oracle: {oracle_sup == phi_sq}); "
                  f"sqrt2 max={float(sqrt2_scan.sup):.6f} < 4: {sqrt2_ok}")


def test_criterion_5_unbounded_direction():
    t = build_table(rule_source("natural"), 0)
    res = ratio_scan(t, convergents_only=True, k_max=15)
    failures = []
    for k, pt in enumerate(res.points):
        if pt.m != t.extended(k + 1).q(k + 1) or pt.decomposition[1:] != (k, k + 1, 0):
            failures.append(f"k={k}: wrong sample point {pt.decomposition}")
        if pt.branch != BRANCH_FULL or not pt.ratio.lo >= k + 2:
            failures.append(f"k={k}: ratio {float(pt.ratio_value)} < {k + 2}")
        if not pt.ratio_error < Fraction(1, 10**9):
            failures.append(f"k={k}: error {float(pt.ratio_error)}")
    ok = len(res.points) == 16 and not failures
    report(5, ok, failures[0] if failures else
           f"ratio at m=q_(k+1) >= k+2 for k=0..15, last {float(res.points[-1].ratio_value):.6f}")


def test_criterion_6_precision_robustness():
    rep = verify(PeriodicSource([0], [1, 2]), 500, precision=128)
    ok = rep.ok and not rep.exact and rep.precision == 128
    report(6, ok, rep.summary().splitlines()[0])


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
