"""Brute-force partitions, hook lengths and the classical identities used as oracles."""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterator

from .distribution import HookDistribution
from .series import POLY, CoeffPoly, QSeries, series_mul


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be positive integers, got {p!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts) -> "Partition":
        return tuple.__new__(cls, parts)

    @property
    def parts(self) -> tuple:
        return tuple(self)

    @property
    def n(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Partition({', '.join(map(str, self))})"

    def __str__(self):
        return ",".join(map(str, self)) if self else "()"


def _partitions(n: int, largest: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in lexicographically decreasing order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition._trusted(p) for p in _partitions(n, n)]


def _distinct_odd(n: int, largest: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    top = min(n, largest)
    if top % 2 == 0:
        top -= 1
    for h in range(top, 0, -2):
        for rest in _distinct_odd(n - h, h - 2):
            yield (h,) + rest


def from_principal_hooks(hooks: tuple) -> Partition:
    """Self-conjugate partition whose diagonal hooks have the given odd lengths."""
    d = len(hooks)
    head = [i + (h + 1) // 2 for i, h in enumerate(hooks)]
    rows = list(head)
    j = d + 1
    while True:
        # below the Durfee square, row j mirrors column j
        length = sum(1 for r in head if r >= j)
        if length == 0:
            break
        rows.append(length)
        j += 1
    return Partition(rows)


def enumerate_self_conjugate(n: int) -> list[Partition]:
    """Self-conjugate partitions of n, built from distinct odd principal hooks."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []
    for hooks in _distinct_odd(n, n):
        lam = from_principal_hooks(hooks)
        if conjugate(lam) != lam or lam.n != n:
            raise AssertionError(f"principal-hook construction failed for {hooks}")
        out.append(lam)
    out.sort(reverse=True)
    return out


def conjugate(lam) -> Partition:
    if not lam:
        return Partition._trusted(())
    cols = []
    for k in range(1, lam[0] + 1):
        c = 0
        for part in lam:
            if part < k:
                break
            c += 1
        cols.append(c)
    return Partition._trusted(cols)


def hook_lengths(lam) -> list[int]:
    """Hook numbers h(j,k) cell by cell, row-major."""
    conj = conjugate(lam)
    # 0-based j, k: arm = row - (k + 1), leg = conj[k] - (j + 1)
    return [
        (row - j) + (conj[k] - k) - 1
        for j, row in enumerate(lam)
        for k in range(row)
    ]


def hook_multiset(lam) -> Counter:
    return Counter(hook_lengths(lam))


def count_t_hooks(lam, t: int) -> int:
    if t < 1:
        raise ValueError("t must be a positive integer")
    return hook_multiset(lam)[t]


def brute_distribution(t: int, n: int, self_conjugate_only: bool = True) -> HookDistribution:
    """Exact distribution of N_t over partitions of n, by enumeration."""
    pool = enumerate_self_conjugate(n) if self_conjugate_only else enumerate_partitions(n)
    tally = Counter(count_t_hooks(lam, t) for lam in pool)
    return HookDistribution.from_mapping(t, n, tally)


def ftr_dimension(lam) -> int:
    """Frame-Thrall-Robinson dimension n! / prod(hooks)."""
    prod = math.prod(hook_lengths(lam))
    q, r = divmod(math.factorial(sum(lam)), prod)
    if r:
        raise ArithmeticError(f"hook product {prod} does not divide {sum(lam)}! for {lam!r}")
    return q


def nekrasov_okounkov_lhs(n: int) -> CoeffPoly:
    """sum over partitions of n of prod_h (1 - z/h^2), as a polynomial in z."""
    total = CoeffPoly()
    for lam in enumerate_partitions(n):
        term = CoeffPoly((1,))
        for h in hook_lengths(lam):
            term = term * CoeffPoly((1, Fraction(-1, h * h)))
        total = total + term
    return total


def nekrasov_okounkov_rhs(n: int) -> CoeffPoly:
    """Coefficient of q^n in prod_{k>=1} (1 - q^k)^(z-1), via the binomial series."""
    z_minus_1 = CoeffPoly((-1, 1))
    # binom(z-1, j) * (-1)^j for j = 0..n
    binoms = [CoeffPoly((1,))]
    for j in range(1, n + 1):
        binoms.append(binoms[-1] * (z_minus_1 - (j - 1)) * Fraction(-1, j))
    product = QSeries.one(n, POLY)
    for k in range(1, n + 1):
        factor = [POLY.zero] * (n + 1)
        for j in range(0, n // k + 1):
            factor[j * k] = binoms[j]
        product = series_mul(product, QSeries(factor, POLY))
    return product[n]
