"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a PASS/FAIL line that is repeated in the terminal summary.
"""

import math
import subprocess
import sys
import time
from collections import Counter
from decimal import Decimal
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from hookdist import asymptotics as asy
from hookdist import stats
from hookdist.genfun import build_genfun, sc_polynomial
from hookdist.partitions import (
    brute_distribution,
    enumerate_partitions,
    ftr_dimension,
    hook_multiset,
    nekrasov_okounkov_lhs,
    nekrasov_okounkov_rhs,
)
from hookdist.series import INF, QMonomial, pochhammer

PI = math.pi
PHI = lambda x: math.exp(-x * x / 2) / math.sqrt(2 * PI)


def record(k: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {k:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


def test_criterion_01_table1_reproduction():
    printed = {
        100: ("9.17483", "7.79697", "1.17672"),
        500: ("18.76417", "17.43455", "1.07626"),
        1000: ("25.97841", "24.65618", "1.05363"),
        5000: ("56.44511", "55.13289", "1.0238"),
    }
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "hookdist", "table1", "--nvals", "100,500,1000,5000", "-q"],
        capture_output=True, text=True, check=True,
    )
    elapsed = time.perf_counter() - start

    def mismatches(text):
        got = {int(r.split(",")[0]): r.split(",")[1:] for r in text.splitlines()[1:]}
        bad = []
        for n, row in printed.items():
            for col, want in zip(("mean", "mu", "ratio"), row):
                have = got[n][("mean", "mu", "ratio").index(col)]
                # printed precision: compare at the number of decimals shown
                places = len(want.split(".")[1])
                if Decimal(have).quantize(Decimal(1).scaleb(-places)) != Decimal(want):
                    bad.append(f"n={n} {col} {have}!={want}")
        return bad

    bad = mismatches(proc.stdout)
    rule = "half-up"
    if bad:
        # round-half-even is the single permitted fallback
        rule = "half-even"
        alt = subprocess.run(
            [sys.executable, "-m", "hookdist", "table1", "--nvals", "100,500,1000,5000",
             "--rounding", "half-even", "-q"],
            capture_output=True, text=True, check=True,
        )
        bad = mismatches(alt.stdout)
    record(1, "table1 values at printed precision, < 120 s",
           not bad and elapsed < 120,
           f"{rule}, {elapsed:.1f}s, {len(bad)}/12 mismatched: {'; '.join(bad[:4])}")


def test_criterion_02_oracle_equivalence():
    start = time.perf_counter()
    bad = []
    for t in range(1, 7):
        g = build_genfun(t, 30)
        for n in range(31):
            if sc_polynomial(g, n) != brute_distribution(t, n).polynomial():
                bad.append((t, n))
    elapsed = time.perf_counter() - start
    record(2, "genfun == brute force for t<=6, n<=30, < 60 s", not bad and elapsed < 60,
           f"{elapsed:.2f}s, mismatches {bad}")


def test_criterion_03_unrestricted_two_hooks():
    d = brute_distribution(2, 6, self_conjugate_only=False)
    record(3, "N_2 over partitions of 6 = {0:1, 1:4, 2:6} of 11",
           d.as_dict() == {0: 1, 1: 4, 2: 6} and d.total == 11, str(d.as_dict()))


def test_criterion_04_hook_multiset():
    got = hook_multiset((5, 4, 2))
    want = Counter((7, 6, 5, 4, 4, 3, 2, 2, 1, 1, 1))
    record(4, "hooks of (5,4,2)", got == want, str(sorted(got.elements(), reverse=True)))


def test_criterion_05_identity_suites():
    import random

    import mpmath

    no = all(nekrasov_okounkov_lhs(n) == nekrasov_okounkov_rhs(n) for n in range(9))
    ftr = all(
        sum(ftr_dimension(lam) ** 2 for lam in enumerate_partitions(n)) == math.factorial(n)
        for n in range(9)
    )
    rng = random.Random(7)
    dup = 0.0
    ref = 0.0
    for _ in range(200):
        z = rng.uniform(-0.999, 0.999)
        dup = max(dup, abs(asy.dilog(z) + asy.dilog(-z) - asy.dilog(z * z) / 2))
        x = rng.uniform(-20.0, 1.0)
        ref = max(ref, abs(asy.dilog(x) - float(mpmath.polylog(2, x))))
    # derivative identity d/dz Li2(z) = -log(1-z)/z, checked in integrated form
    der = 0.0
    with mpmath.workdps(30):
        for _ in range(50):
            z = rng.uniform(-3.0, 1.0)
            integral = -mpmath.quad(lambda u: mpmath.log1p(-u) / u, [0, z])
            der = max(der, abs(asy.dilog(z) - float(integral)))
    ok = no and ftr and dup < 1e-10 and ref < 1e-10 and der < 1e-10
    record(5, "Nekrasov-Okounkov n<=8, sum dim^2 = n!, dilog identities to 1e-10", ok,
           f"NO={no} FTR={ftr} dup={dup:.1e} vs-mpmath={ref:.1e} derivative={der:.1e}")


def test_criterion_06_cauchy_quadrature():
    start = time.perf_counter()
    errs = []
    for t, T, n in ((2, Fraction(1), 50), (2, Fraction(3, 2), 40), (3, Fraction(1), 30)):
        exact = build_genfun(t, n, T)[n]
        est = asy.cauchy_estimate(t, T, n, 4096)
        errs.append(abs(est / float(exact) - 1))
    elapsed = time.perf_counter() - start
    record(6, "Cauchy quadrature M=4096 rel. error < 1e-6, < 120 s",
           max(errs) < 1e-6 and elapsed < 120,
           f"errors {[f'{e:.1e}' for e in errs]}, {elapsed:.1f}s")


def test_criterion_07_asymptotic_trend():
    results = []
    ok = True
    for t, T in ((2, Fraction(1)), (2, Fraction(3, 2)), (3, Fraction(1))):
        g = build_genfun(t, 2000, T)
        e200 = abs(asy.sc_asymptotic(t, float(T), 200) / float(g[200]) - 1)
        e2000 = abs(asy.sc_asymptotic(t, float(T), 2000) / float(g[2000]) - 1)
        ok = ok and e2000 < e200 and e2000 < 0.25
        results.append(f"(t={t},T={T}) {e200:.4f}->{e2000:.4f}")
    record(7, "sc_asymptotic rel. error shrinks 200->2000 and < 0.25", ok, "; ".join(results))


@pytest.fixture(scope="module")
def t2_distributions():
    top = 2500
    return {n: stats.distribution(2, n, truncation=top) for n in (100, 400, 2500)}


def test_criterion_08_normality(t2_distributions):
    d = t2_distributions
    notes = []
    ok = True
    for r in (-1.0, 1.0):
        lo = abs(stats.mgf(2, 100, r, d[100]) - math.exp(r * r / 2))
        hi = abs(stats.mgf(2, 2500, r, d[2500]) - math.exp(r * r / 2))
        ok = ok and hi < lo
        notes.append(f"mgf r={r:+.0f} {lo:.4f}->{hi:.4f}")
    s100, k100 = stats.standardized_moments(2, 100, d[100])
    s2500, k2500 = stats.standardized_moments(2, 2500, d[2500])
    ok = ok and abs(s2500) < abs(s100) and abs(k2500) < abs(k100)
    notes.append(f"skew {s100:.4f}->{s2500:.4f}, kurt {k100:.4f}->{k2500:.4f}")

    def worst(n):
        return max(abs(y - PHI(x)) for _, x, y in stats.figure2_data(2, n, d[n]))

    w400, w2500 = worst(400), worst(2500)
    ok = ok and w2500 < w400
    notes.append(f"figure2 max dev {w400:.5f}->{w2500:.5f}")
    record(8, "t=2 normality diagnostics improve with n", ok, "; ".join(notes))


def test_criterion_09_mean_variance_constants():
    top = 5000
    c_mean = -1 + 3 / PI**2
    c_var = 3 * (PI**2 - 12) / PI**4

    def offsets(n):
        mean, var = stats.exact_moments(2, n, "jets", truncation=top)
        return (float(mean) - math.sqrt(6 * n) / PI - c_mean,
                float(var) - (PI**2 - 6) * math.sqrt(6 * n) / PI**3 - c_var)

    m400, v400 = offsets(400)
    m4000, v4000 = offsets(4000)
    mean3, _ = stats.exact_moments(3, 4000, "jets")
    mean2, _ = stats.exact_moments(2, 4000, "jets", truncation=top)
    gap = float(mean3 - mean2)
    ok = (abs(m4000) < 0.1 and abs(m4000) < abs(m400)
          and abs(v4000) < 0.1 and abs(v4000) < abs(v400)
          and abs(gap + 0.25) < 0.1)
    record(9, "mean/variance constants and t=3 vs t=2 gap", ok,
           f"mean dev {m400:+.4f}->{m4000:+.4f}, var dev {v400:+.4f}->{v4000:+.4f}, gap {gap:+.4f}")


def test_criterion_10_full_polynomial_scalability():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "hookdist", "dist", "-t", "2", "-n", "2000", "--format", "json", "-q"],
        capture_output=True, text=True, check=True, timeout=600,
    )
    elapsed = time.perf_counter() - start
    import json

    doc = json.loads(proc.stdout)
    counts = {m: int(c) for m, c in doc["coeffs"]}
    sc = pochhammer(QMonomial(-1, 1), 2, INF, 2000)[2000]
    mean = Fraction(sum(m * c for m, c in counts.items()), sum(counts.values()))
    ok = (
        sum(counts.values()) == sc == int(doc["total"])
        and all(m % 2 == 0 for m in counts)
        and mean == stats.exact_moments(2, 2000, "jets")[0]
        and elapsed < 600
    )
    record(10, "dist -t 2 -n 2000 exact, < 600 s", ok, f"{elapsed:.1f}s, {len(counts)} nonzero counts")


@pytest.mark.slow
def test_criterion_10_figure2_n5000():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "hookdist", "figure2", "-t", "2", "-n", "5000", "-q"],
        capture_output=True, text=True, check=True, timeout=7200,
    )
    elapsed = time.perf_counter() - start
    peak = max(float(r.split(",")[2]) for r in proc.stdout.splitlines()[1:])
    target = 1 / math.sqrt(2 * PI)
    ok = abs(peak / target - 1) < 0.2 and elapsed < 7200
    line = f"criterion 10b {'PASS' if ok else 'FAIL'}  figure2 n=5000 peak {peak:.5f} vs {target:.5f}, {elapsed:.0f}s"
    print(line)
    assert ok, line
