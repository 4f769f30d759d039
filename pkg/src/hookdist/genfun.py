"""Bivariate generating function F_t(T; q) for t-hooks in self-conjugate partitions.

F_t(T; q) = sum over self-conjugate partitions of T^{N_t(lambda)} q^{|lambda|}

is assembled from the product formulas

* t even:  (-q; q^2)_inf * ((1 - T^2) q^{2t}; q^{2t})_inf^{t/2}
* t odd:   (-q; q^2)_inf * H*(T; q^t) * ((1 - T^2) q^{2t}; q^{2t})_inf^{(t-1)/2}

with H* taken from its q-hypergeometric form, which only needs Laurent
polynomials in T.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .distribution import HookDistribution
from .series import (
    INF,
    JET,
    POLY,
    RATIONAL,
    CoeffPoly,
    Jet3,
    QMonomial,
    QSeries,
    Ring,
    pochhammer,
    series_mul,
    series_pow,
)


def _resolve_ring(ring) -> tuple[Ring, object]:
    """Map a ring spec to (Ring, the element standing for T).

    ``"poly"`` keeps T symbolic, ``"jet"`` evaluates at T = 1 + eps, and a
    rational number T0 evaluates at T = T0.
    """
    if ring == "poly" or ring is POLY:
        return POLY, CoeffPoly.T()
    if ring == "jet" or ring is JET:
        return JET, Jet3(1, 1)
    if isinstance(ring, (int, Fraction)) and not isinstance(ring, bool):
        if ring == 0:
            raise ValueError("T = 0 is outside the domain of H*")
        return RATIONAL, Fraction(ring)
    raise ValueError(f"unknown ring specification {ring!r}")


def hstar_series(truncation: int, ring="poly") -> QSeries:
    """H*(T; q) up to q^truncation from the two q-hypergeometric sums."""
    if truncation < 0:
        raise ValueError("truncation must be non-negative")
    R, T = _resolve_ring(ring)
    N = truncation
    inv_T = T.inverse() if R is not RATIONAL else 1 / T
    u = T * T - 1
    first = (1 - inv_T)
    second = inv_T
    total = QSeries.zero(N, R)
    # D = 1 / ((q^2;q^2)_n (-q;q^2)_n), kept as an integer series
    denom_inv = QSeries.one(N)
    u_pow = R.one
    n = 0
    while 2 * n * n - n <= N:
        if n:
            denom_inv = denom_inv.div_binomial(-1, 2 * n).div_binomial(1, 2 * n - 1)
        with_extra = denom_inv.div_binomial(1, 2 * n + 1)
        if not R.is_zero(R.coerce(u_pow)):
            e2 = 2 * n * n - n
            e1 = 2 * n * n + n
            total = total + denom_inv.shift(e2).scale(second * u_pow)
            if e1 <= N:
                total = total + with_extra.shift(e1).scale(first * u_pow)
        u_pow = u_pow * u
        n += 1
    return total


@dataclass(frozen=True)
class HookGenFun:
    """F_t(T; q) truncated at q^truncation, over the chosen coefficient ring."""

    t: int
    truncation: int
    series: QSeries
    ring_spec: object = "poly"

    def __getitem__(self, n: int):
        return self.series[n]


def _check_invariants(series: QSeries, ring_spec, T) -> None:
    R = series.ring
    for n, c in enumerate(series):
        if R is POLY:
            if not c.is_polynomial():
                raise ArithmeticError(f"negative T-power survived at q^{n}: {c!r}")
            bad = [x for x in c.coeffs if not isinstance(x, int) or x < 0]
        elif R is JET:
            # sum_m c_m (1+eps)^m = sum c_m + (sum m c_m) eps + (sum C(m,2) c_m) eps^2
            bad = [x for x in (c.a0, c.a1, c.a2) if not isinstance(x, int) or x < 0]
        else:
            bad = [c] if (T > 0 and c < 0) or (T.denominator == 1 and not isinstance(c, int)) else []
        if bad:
            raise ArithmeticError(f"invalid coefficient at q^{n}: {c!r}")


def build_genfun(t: int, truncation: int, ring="poly") -> HookGenFun:
    """Assemble F_t(T; q) up to q^truncation.

    ``ring`` is ``"poly"`` (symbolic T), ``"jet"`` (T = 1 + eps) or a rational
    T0 at which to evaluate.
    """
    if t < 1:
        raise ValueError("t must be a positive integer")
    if truncation < 0:
        raise ValueError("truncation must be non-negative")
    R, T = _resolve_ring(ring)
    N = truncation
    base = pochhammer(QMonomial(-1, 1), 2, INF, N).change_ring(R)
    marked = pochhammer(QMonomial(1 - T * T, 2 * t), 2 * t, INF, N, R)
    power = t // 2
    result = base
    if power:
        result = series_mul(result, series_pow(marked, power))
    if t % 2:
        h = hstar_series(N // t, ring).dilate(t, N)
        result = series_mul(result, h)
    _check_invariants(result, ring, T)
    return HookGenFun(t, N, result, ring)


@lru_cache(maxsize=8)
def cached_genfun(t: int, truncation: int, ring="poly") -> HookGenFun:
    return build_genfun(t, truncation, ring)


def sc_polynomial(g: HookGenFun, n: int) -> CoeffPoly:
    """The exact polynomial sc_t(n; T)."""
    if g.series.ring is not POLY:
        raise TypeError("sc_polynomial needs a generating function built over the poly ring")
    if not 0 <= n <= g.truncation:
        raise IndexError(f"n={n} outside 0..{g.truncation}")
    return g.series[n]


def hook_distribution(g: HookGenFun, n: int) -> HookDistribution:
    return HookDistribution.from_polynomial(g.t, n, sc_polynomial(g, n))


def evaluate_sc(g: HookGenFun, n: int, T0, digits: int = 40):
    """sc_t(n; T0): exact for rational T0, otherwise via high-precision floats."""
    poly = sc_polynomial(g, n)
    if isinstance(T0, (int, Fraction)) and not isinstance(T0, bool):
        return poly(Fraction(T0)) if poly.coeffs else 0
    with mpmath.workdps(digits):
        x = mpmath.mpf(T0)
        acc = mpmath.mpf(0)
        for c in reversed(poly.dense()):
            acc = acc * x + c
        return float(acc)


def sc_to_json(t: int, n: int, poly: CoeffPoly) -> str:
    coeffs = [[m, str(c)] for m, c in sorted(poly.terms.items())]
    return json.dumps({"t": t, "n": n, "coeffs": coeffs})


def sc_from_json(text: str) -> tuple[int, int, CoeffPoly]:
    data = json.loads(text)
    poly = CoeffPoly.from_terms({int(m): int(c) for m, c in data["coeffs"]})
    return int(data["t"]), int(data["n"]), poly
