"""Self-check suites run by ``hookdist verify``."""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import mpmath

from . import asymptotics as asy
from .genfun import build_genfun, evaluate_sc, sc_polynomial
from .partitions import (
    brute_distribution,
    enumerate_partitions,
    enumerate_self_conjugate,
    ftr_dimension,
    hook_multiset,
    nekrasov_okounkov_lhs,
    nekrasov_okounkov_rhs,
)
from .series import INF, QMonomial, pochhammer

log = logging.getLogger(__name__)

SEED = 20240229


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.suite}] {self.name}" + (f": {self.detail}" if self.detail else "")


def oracle_checks(max_t: int = 6, max_n: int = 30) -> Iterator[Check]:
    for t in range(1, max_t + 1):
        log.info("oracle: t=%d, n<=%d", t, max_n)
        g = build_genfun(t, max_n)
        bad = [
            n for n in range(max_n + 1)
            if sc_polynomial(g, n) != brute_distribution(t, n).polynomial()
        ]
        yield Check("oracle", f"genfun == brute force, t={t}, n<={max_n}", not bad,
                    f"mismatch at n={bad}" if bad else "")
    sc = pochhammer(QMonomial(-1, 1), 2, INF, 40)
    bad = [n for n in range(41) if sc[n] != len(enumerate_self_conjugate(n))]
    yield Check("oracle", "(-q;q^2)_inf counts self-conjugate partitions, n<=40", not bad,
                f"mismatch at n={bad}" if bad else "")


def identity_checks(seed: int = SEED) -> Iterator[Check]:
    rng = random.Random(seed)
    yield Check("identities", "hook multiset of (5,4,2)",
                hook_multiset((5, 4, 2)) == Counter((7, 6, 5, 4, 4, 3, 2, 2, 1, 1, 1)))
    d = brute_distribution(2, 6, self_conjugate_only=False)
    yield Check("identities", "N_2 over partitions of 6 is {0:1, 1:4, 2:6}",
                d.as_dict() == {0: 1, 1: 4, 2: 6} and d.total == 11)
    for n in range(9):
        ok = nekrasov_okounkov_lhs(n) == nekrasov_okounkov_rhs(n)
        yield Check("identities", f"Nekrasov-Okounkov coefficient n={n}", ok)
    for n in range(9):
        total = sum(ftr_dimension(lam) ** 2 for lam in enumerate_partitions(n))
        yield Check("identities", f"sum of squared FTR dimensions = {n}!",
                    total == math.factorial(n), f"{total}")
    worst = 0.0
    for _ in range(50):
        z = rng.uniform(-0.999, 0.999)
        worst = max(worst, abs(asy.dilog(z) + asy.dilog(-z) - asy.dilog(z * z) / 2))
    yield Check("identities", "Li2(z) + Li2(-z) = Li2(z^2)/2 at 50 points", worst < 1e-10,
                f"max error {worst:.2e}")
    # d/dz Li2(z) = -log(1-z)/z, integrated from 0 with high-precision quadrature
    worst = 0.0
    with mpmath.workdps(30):
        for _ in range(20):
            z = rng.uniform(-3.0, 1.0)
            integral = -mpmath.quad(lambda u: mpmath.log1p(-u) / u, [0, z])
            worst = max(worst, abs(asy.dilog(z) - float(integral)))
    yield Check("identities", "Li2(z) = -int_0^z log(1-u)/u du at 20 points", worst < 1e-10,
                f"max error {worst:.2e}")

CAUCHY_POINTS = ((2, Fraction(1), 50), (2, Fraction(3, 2), 40), (3, Fraction(1), 30))
TREND_POINTS = ((2, Fraction(1)), (2, Fraction(3, 2)), (3, Fraction(1)))


def asymptotic_checks(workers: int = 1, samples: int = 4096) -> Iterator[Check]:
    for t, T, n in CAUCHY_POINTS:
        log.info("asymptotics: Cauchy integral t=%d T=%s n=%d", t, T, n)
        exact = evaluate_sc(build_genfun(t, n), n, T)
        est = asy.cauchy_estimate(t, T, n, samples, workers=workers)
        err = abs(est / float(exact) - 1)
        yield Check("asymptotics", f"Cauchy quadrature t={t} T={T} n={n} M={samples}",
                    err < 1e-6, f"relative error {err:.2e}")
    for t, T in TREND_POINTS:
        log.info("asymptotics: main-term trend t=%d T=%s", t, T)
        g = build_genfun(t, 2000, T)
        e200 = abs(asy.sc_asymptotic(t, float(T), 200) / float(g[200]) - 1)
        e2000 = abs(asy.sc_asymptotic(t, float(T), 2000) / float(g[2000]) - 1)
        yield Check("asymptotics", f"main term t={t} T={T}: error(2000) < error(200), < 0.25",
                    e2000 < e200 and e2000 < 0.25, f"{e200:.4f} -> {e2000:.4f}")
    for t in (1, 2, 3, 4):
        _, c1, c2 = asy.bt_taylor_coeffs(t)
        h = 1e-4
        f = lambda x: asy.b_t(t, math.exp(x))
        d1 = (f(h) - f(-h)) / (2 * h)
        d2 = (f(h) - 2 * f(0) + f(-h)) / (h * h)
        err = max(abs(d1 - c1), abs(d2 - 2 * c2))
        yield Check("asymptotics", f"Taylor coefficients of b_t(e^x), t={t}", err < 1e-6,
                    f"max error {err:.2e}")


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "oracle": lambda **kw: oracle_checks(),
    "identities": lambda **kw: identity_checks(),
    "asymptotics": lambda **kw: asymptotic_checks(workers=kw.get("workers", 1)),
}


def run(suite: str = "all", workers: int = 1) -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        out.extend(SUITES[name](workers=workers))
    return out
