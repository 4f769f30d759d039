"""Exact statistics of the t-hook count on self-conjugate partitions."""

from __future__ import annotations

import csv
import io
import math
from decimal import ROUND_HALF_EVEN, ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .asymptotics import mean_variance
from .distribution import HookDistribution
from .genfun import cached_genfun, hook_distribution

__all__ = [
    "HookDistribution",
    "distribution",
    "exact_moments",
    "mgf",
    "standardized_moments",
    "figure2_data",
    "lattice_span",
    "table1",
    "round_fraction",
    "write_csv",
]


def distribution(t: int, n: int, truncation: int | None = None) -> HookDistribution:
    """sc_t(n, m) for all m, from the full polynomial generating function."""
    g = cached_genfun(t, max(n, truncation or 0), "poly")
    return hook_distribution(g, n)


def _moments_from_jet(t: int, n: int, truncation: int | None = None) -> tuple[Fraction, Fraction]:
    jet = cached_genfun(t, max(n, truncation or 0), "jet")[n]
    if jet.a0 == 0:
        raise ZeroDivisionError(f"no self-conjugate partitions of n={n}")
    # F(1+eps) = sum_m c_m (1 + m eps + C(m,2) eps^2)
    mean = Fraction(jet.a1, jet.a0)
    falling2 = Fraction(2 * jet.a2, jet.a0)
    return mean, falling2 + mean - mean * mean


def exact_moments(
    t: int, n: int, method: str = "jets", truncation: int | None = None
) -> tuple[Fraction, Fraction]:
    """Exact (mean, variance) of N_t on SC(n).

    ``method="jets"`` reads them off F_t(1 + eps; q) without building the full
    polynomial; ``method="poly"`` sums over the exact counts.
    """
    if method == "jets":
        return _moments_from_jet(t, n, truncation)
    if method in ("poly", "full-polynomial"):
        dist = distribution(t, n, truncation)
        return dist.mean(), dist.variance()
    raise ValueError(f"unknown method {method!r}")


def mgf(t: int, n: int, r: float, dist: HookDistribution | None = None) -> float:
    """E exp(r (N - mu_t(n)) / sigma_t(n)) with the asymptotic mu_t, sigma_t."""
    dist = dist or distribution(t, n)
    mu, sigma2 = mean_variance(t, n)
    if sigma2 <= 0:
        raise ValueError("non-positive variance")
    sigma = math.sqrt(sigma2)
    total = dist.total
    if total == 0:
        raise ZeroDivisionError(f"no self-conjugate partitions of n={n}")
    return math.fsum(
        (c / total) * math.exp((m - mu) * r / sigma) for m, c in enumerate(dist.counts) if c
    )


def standardized_moments(
    t: int, n: int, dist: HookDistribution | None = None
) -> tuple[float, float]:
    """(skewness, excess kurtosis) from the exact distribution."""
    dist = dist or distribution(t, n)
    var = dist.variance()
    if var == 0:
        raise ValueError(f"degenerate distribution at t={t}, n={n}: zero variance")
    m3 = dist.central_moment(3)
    m4 = dist.central_moment(4)
    skew = float(m3) / float(var) ** 1.5
    kurt = float(m4 / (var * var)) - 3.0
    return skew, kurt


def figure2_data(
    t: int, n: int, dist: HookDistribution | None = None
) -> list[tuple[int, float, float]]:
    """Renormalized coefficients (m, x_m, y_m).

    x_m = (m - mean) / sd and y_m = count_m * sd / (span * sc(n)), where span
    is the lattice step of the support (2 for even t, whose counts vanish at
    odd m).  With this scaling the points approach the standard normal
    density and sum(y_m) * span / sd == 1.
    """
    dist = dist or distribution(t, n)
    var = dist.variance()
    if var <= 0:
        raise ValueError(f"degenerate distribution at t={t}, n={n}: zero variance")
    mean = float(dist.mean())
    sd = math.sqrt(var)
    step = lattice_span(dist)
    total = dist.total
    return [
        (m, (m - mean) / sd, float(Fraction(c, total * step)) * sd)
        for m, c in enumerate(dist.counts)
        if c
    ]


def lattice_span(dist: HookDistribution) -> int:
    """gcd of the gaps between values of m carrying mass (0 for a point mass)."""
    support = [m for m, c in enumerate(dist.counts) if c]
    return math.gcd(*(m - support[0] for m in support[1:])) if len(support) > 1 else 0


def round_fraction(x: Fraction, places: int = 5, rounding: str = ROUND_HALF_UP) -> Decimal:
    """Round an exact rational to ``places`` decimals (half away from zero by default)."""
    num = Decimal(x.numerator)
    den = Decimal(x.denominator)
    exp = Decimal(1).scaleb(-places)
    with localcontext() as ctx:
        ctx.prec = len(str(abs(x.numerator) // x.denominator)) + places + 30
        return (num / den).quantize(exp, rounding=rounding)


def _round_mp(x, places: int = 5, rounding: str = ROUND_HALF_UP) -> Decimal:
    return Decimal(mpmath.nstr(x, 40, strip_zeros=False)).quantize(
        Decimal(1).scaleb(-places), rounding=rounding
    )


def table1(
    nvals: Iterable[int], t: int = 2, rounding: str = ROUND_HALF_UP
) -> list[tuple[int, Decimal, Decimal, Decimal]]:
    """Rows (n, measured mean, sqrt(6n)/pi, ratio), all rounded to 5 decimals.

    The measured mean comes from the jets method; the ratio uses the unrounded
    values.
    """
    nvals = list(nvals)
    if not nvals or any(n < 1 for n in nvals):
        raise ValueError("nvals must be a non-empty list of positive integers")
    top = max(nvals)
    rows = []
    with mpmath.workdps(50):
        for n in nvals:
            mean, _ = exact_moments(t, n, "jets", truncation=top)
            mu = mpmath.sqrt(6 * n) / mpmath.pi
            ratio = (mpmath.mpf(mean.numerator) / mean.denominator) / mu
            rows.append(
                (
                    n,
                    round_fraction(mean, 5, rounding),
                    _round_mp(mu, 5, rounding),
                    _round_mp(ratio, 5, rounding),
                )
            )
    return rows


def write_csv(header: Sequence[str], rows: Iterable[Sequence], stream=None) -> str:
    """RFC 4180 CSV with LF line endings; returns the text if no stream is given."""
    buf = stream if stream is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue() if stream is None else ""


ROUNDING_RULES = {"half-up": ROUND_HALF_UP, "half-even": ROUND_HALF_EVEN}
