"""Dilogarithm, saddle-point asymptotics and the Cauchy-integral cross-check."""

from __future__ import annotations

import math
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import mpmath

PI = math.pi
ZETA2 = PI * PI / 6


def dilog(x: float) -> float:
    """Real dilogarithm Li_2(x) for x <= 1.

    The defining series is used on |x| <= 1/2; the rest of (-inf, 1] is mapped
    there by reflection (x -> 1-x), Landen (x -> x/(x-1)) and inversion
    (x -> 1/x).
    """
    x = float(x)
    if x > 1:
        raise ValueError(f"real dilogarithm is undefined for x > 1 (got {x})")
    if x == 1:
        return ZETA2
    if x < -1:
        return -ZETA2 - 0.5 * math.log(-x) ** 2 - dilog(1 / x)
    if x < -0.5:
        return -dilog(x / (x - 1)) - 0.5 * math.log1p(-x) ** 2
    if x > 0.5:
        return ZETA2 - math.log(x) * math.log1p(-x) - dilog(1 - x)
    total = 0.0
    power = x
    k = 1
    while True:
        term = power / (k * k)
        total += term
        if abs(term) < 1e-18:
            return total
        k += 1
        power *= x


def delta(t: int) -> int:
    return t % 2


def b_t(t: int, T: float) -> float:
    if t < 1:
        raise ValueError("t must be a positive integer")
    if T <= 0:
        raise ValueError("T must be positive")
    weight = 1.0 if t % 2 == 0 else (t - 1) / t
    radicand = ZETA2 - weight * dilog(1 - T * T)
    assert radicand > 0, radicand
    return 0.5 * math.sqrt(radicand)


def saddle_alpha(t: int, T: float, n: int) -> float:
    """Leading-order saddle point alpha = b_t(T) / sqrt(n)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return b_t(t, T) / math.sqrt(n)


def sc_asymptotic(t: int, T: float, n: int) -> float:
    """Main term of sc_t(n; T) from the saddle-point method."""
    if n < 1:
        raise ValueError("n must be at least 1")
    b = b_t(t, T)
    root = math.sqrt(n)
    return math.sqrt(b / (4 * PI * n**1.5)) * math.exp(b * (2 * root - 1 / root))


def _mu(t: int, n: float) -> float:
    return math.sqrt(6 * n) / PI - t / 2 + 3 / PI**2 + delta(t) / 4


def _sigma2(t: int, n: float) -> float:
    return (PI**2 - 6) * math.sqrt(6 * n) / PI**3 + 3 * (PI**2 - 12) / PI**4 - delta(t) / 8


def n_min(t: int) -> int:
    """Smallest n with a positive asymptotic variance."""
    n = 0
    while _sigma2(t, n) <= 0:
        n += 1
    return n


def mean_variance(t: int, n: int) -> tuple[float, float]:
    """Asymptotic mean and variance of the t-hook count (constant terms kept)."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    if n < n_min(t):
        raise ValueError(f"asymptotic variance is not positive for n={n} < {n_min(t)}")
    return _mu(t, n), _sigma2(t, n)


@dataclass(frozen=True)
class AsymptoticParams:
    t: int
    delta_t: int
    b1: float
    n_min: int
    mu_fn: Callable[[int], float]
    sigma2_fn: Callable[[int], float]


def asymptotic_params(t: int) -> AsymptoticParams:
    return AsymptoticParams(
        t=t,
        delta_t=delta(t),
        b1=b_t(t, 1.0),
        n_min=n_min(t),
        mu_fn=lambda n: mean_variance(t, n)[0],
        sigma2_fn=lambda n: mean_variance(t, n)[1],
    )


def bt_taylor_coeffs(t: int) -> tuple[float, float, float]:
    """Coefficients c0, c1, c2 of b_t(e^x) = c0 + c1 x + c2 x^2 + O(x^3)."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    r = math.sqrt(1.5)
    c0 = PI / (2 * math.sqrt(6))
    if t % 2 == 0:
        return c0, r / PI, r * (PI**2 - 6) / (2 * PI**3)
    return (
        c0,
        r * (t - 1) / (PI * t),
        r * (t - 1) * ((PI**2 - 6) * t + 6) / (2 * PI**3 * t * t),
    )


# ---------------------------------------------------------------------------
# Cauchy integral
# ---------------------------------------------------------------------------

_FACTOR_EPS = mpmath.mpf("1e-18")


def _product(first, step, coef):
    """prod_{k>=0} (1 + coef * first * step^k), stopping once factors are ~1."""
    acc = mpmath.mpc(1)
    term = coef * first
    while abs(term) >= _FACTOR_EPS:
        acc *= 1 + term
        term *= step
    return acc


def _hstar(T, w):
    """H*(T; w) from the hypergeometric sums, complex |w| < 1."""
    u = T * T - 1
    first = 1 - 1 / T
    second = 1 / T
    total = mpmath.mpc(0)
    denom = mpmath.mpc(1)  # (w^2;w^2)_n (-w;w^2)_n
    u_pow = mpmath.mpf(1)
    n = 0
    while True:
        if n:
            denom *= (1 - w ** (2 * n)) * (1 + w ** (2 * n - 1))
        a = first * u_pow * w ** (2 * n * n + n) / (denom * (1 + w ** (2 * n + 1)))
        b = second * u_pow * w ** (2 * n * n - n) / denom
        total += a + b
        if n and abs(a) + abs(b) < _FACTOR_EPS * max(abs(total), 1):
            return total
        if u == 0:
            return total
        u_pow *= u
        n += 1


def evaluate_F(t: int, T, z):
    """F_t(T; z) for complex |z| < 1 in the current mpmath precision."""
    z = mpmath.mpc(z)
    if abs(z) >= 1:
        raise ValueError("product evaluation does not converge for |z| >= 1")
    T = T if isinstance(T, mpmath.mpf) else _to_mpf(_T_token(T))
    value = _product(z, z * z, 1)  # (-z; z^2)_inf
    u = 1 - T * T
    if u != 0 and t >= 2:
        w = z ** (2 * t)
        value *= _product(w, w, -u) ** (t // 2)
    if t % 2:
        value *= _hstar(T, z**t)
    return value


def _T_token(T):
    # picklable, precision-independent form of T
    if isinstance(T, Fraction):
        return (T.numerator, T.denominator)
    if isinstance(T, int):
        return (T, 1)
    return repr(float(T))


def _to_mpf(token):
    if isinstance(token, tuple):
        return mpmath.mpf(token[0]) / token[1]
    return mpmath.mpf(token)


def _samples(args):
    t, T, n, z0, M, start, stop, dps = args
    with mpmath.workdps(dps):
        z0 = mpmath.mpf(z0)
        T = _to_mpf(T)
        out = []
        for j in range(start, stop):
            x = 2 * mpmath.pi * j / M
            z = z0 * mpmath.expjpi(2 * mpmath.mpf(j) / M)
            out.append((evaluate_F(t, T, z) * mpmath.expj(-n * x)).real)
        return [mpmath.nstr(v, dps + 5) for v in out]


def _pairwise_sum(values):
    if len(values) == 1:
        return values[0]
    mid = len(values) // 2
    return _pairwise_sum(values[:mid]) + _pairwise_sum(values[mid:])


def cauchy_estimate(
    t: int, T, n: int, samples: int, *, dps: int = 30, workers: int = 1
) -> float:
    """Trapezoidal quadrature of the Cauchy integral for sc_t(n; T).

    Integrates over the circle |z| = exp(-saddle_alpha(t, T, n)).  Conjugate
    symmetry halves the work; the summation order is fixed by sample index
    so the result does not depend on ``workers``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if samples < 8 * n:
        raise ValueError(f"need at least 8n = {8 * n} samples, got {samples}")
    if dps < 30:
        raise ValueError("quadrature needs at least 30 significant digits")
    half = samples // 2
    with mpmath.workdps(dps):
        z0 = mpmath.exp(-mpmath.mpf(saddle_alpha(t, float(T), n)))
        z0_str = mpmath.nstr(z0, dps + 5)
    T_str = _T_token(T)
    chunks = max(1, workers) * 4
    bounds = [round(i * (half + 1) / chunks) for i in range(chunks + 1)]
    tasks = [
        (t, T_str, n, z0_str, samples, bounds[i], bounds[i + 1], dps)
        for i in range(chunks)
        if bounds[i] < bounds[i + 1]
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_samples, tasks))
    else:
        parts = [_samples(task) for task in tasks]
    with mpmath.workdps(dps):
        vals = [mpmath.mpf(v) for part in parts for v in part]
        # j = 0 and j = M/2 appear once, 0 < j < M/2 twice (conjugate pairs)
        weights = [1 if j == 0 or 2 * j == samples else 2 for j in range(len(vals))]
        total = _pairwise_sum([w * v for w, v in zip(weights, vals)])
        z0 = mpmath.mpf(z0_str)
        return float(total / samples / z0**n)
