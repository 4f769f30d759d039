from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .series import CoeffPoly


@dataclass(frozen=True)
class HookDistribution:
    """Counts sc_t(n, m) of partitions of n with exactly m hooks of length t.

    ``counts[m]`` is indexed from m = 0; trailing zeros are not stored.
    """

    t: int
    n: int
    counts: tuple

    def __post_init__(self):
        if any((not isinstance(c, int)) or c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative integers")
        if self.counts and self.counts[-1] == 0:
            raise ValueError("trailing zero counts are not stored")

    @classmethod
    def from_mapping(cls, t: int, n: int, tally: Mapping[int, int]) -> "HookDistribution":
        size = max((m for m, c in tally.items() if c), default=-1) + 1
        return cls(t, n, tuple(int(tally.get(m, 0)) for m in range(size)))

    @classmethod
    def from_polynomial(cls, t: int, n: int, poly: CoeffPoly) -> "HookDistribution":
        for c in poly.coeffs:
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"not a counting polynomial: {poly!r}")
        return cls(t, n, tuple(poly.dense()))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict:
        return {m: c for m, c in enumerate(self.counts) if c}

    def polynomial(self) -> CoeffPoly:
        return CoeffPoly(self.counts)

    def _require_nonempty(self):
        if self.total == 0:
            raise ZeroDivisionError(f"no partitions of n={self.n} in the sample space")

    def mean(self) -> Fraction:
        self._require_nonempty()
        return Fraction(sum(m * c for m, c in enumerate(self.counts)), self.total)

    def variance(self) -> Fraction:
        self._require_nonempty()
        second = Fraction(sum(m * m * c for m, c in enumerate(self.counts)), self.total)
        return second - self.mean() ** 2

    def central_moment(self, k: int) -> Fraction:
        mu = self.mean()
        return sum((c * (m - mu) ** k for m, c in enumerate(self.counts) if c), Fraction(0)) / self.total
