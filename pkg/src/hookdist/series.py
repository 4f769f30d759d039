"""Exact coefficient rings and truncated power series in q.

Three coefficient rings are supported:

* ``RATIONAL`` -- Python ``int`` / ``fractions.Fraction``;
* ``POLY`` -- :class:`CoeffPoly`, Laurent polynomials in ``T``;
* ``JET`` -- :class:`Jet3`, second-order jets ``a0 + a1*eps + a2*eps**2``.

Multiplication of long series goes through Kronecker substitution: the
coefficient table is packed into one big integer, multiplied once (GMP via
gmpy2 when available) and unpacked.  The schoolbook convolution is kept as the
reference path and for short inputs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

try:
    import gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None

INF = math.inf

# below this many packed slots the big-integer path is not worth the overhead
_KRONECKER_MIN_SLOTS = 64
_GMP_MIN_BITS = 1 << 16


def _norm(x):
    """Collapse integral Fractions to int so the fast int paths stay hot."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# CoeffPoly
# ---------------------------------------------------------------------------


class CoeffPoly:
    """Laurent polynomial in T with exact rational coefficients.

    Stored densely as ``coeffs[i]`` = coefficient of ``T**(low + i)``, with
    both ends trimmed so the first and last stored entries are nonzero.  The
    zero polynomial has ``coeffs == ()``.  Use :attr:`terms` for the sparse
    view without zeros.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs: Iterable = (), low: int = 0):
        cs = [_norm(c) for c in coeffs]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        self.coeffs = tuple(cs[start:end])
        self.low = low + start if self.coeffs else 0

    @classmethod
    def _raw(cls, coeffs: tuple, low: int) -> "CoeffPoly":
        # caller guarantees trimmed, normalized coefficients
        p = object.__new__(cls)
        p.coeffs = coeffs
        p.low = low if coeffs else 0
        return p

    @classmethod
    def from_terms(cls, terms: dict) -> "CoeffPoly":
        terms = {e: c for e, c in terms.items() if c != 0}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def constant(cls, c) -> "CoeffPoly":
        return cls((c,))

    @classmethod
    def T(cls) -> "CoeffPoly":
        return cls((1,), 1)

    @property
    def terms(self) -> dict:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c != 0}

    @property
    def degree(self) -> int:
        """Highest exponent; -1 for the zero polynomial."""
        return self.low + len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_polynomial(self) -> bool:
        return self.low >= 0

    def coefficient(self, m: int):
        i = m - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def dense(self) -> list:
        """Coefficients of T**0 .. T**degree (requires no negative exponents)."""
        if not self.coeffs:
            return []
        if self.low < 0:
            raise ValueError("Laurent polynomial has negative exponents")
        return [0] * self.low + list(self.coeffs)

    def __call__(self, x):
        """Evaluate exactly (rationals) or in whatever arithmetic ``x`` uses."""
        if not self.coeffs:
            return 0 * x
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low >= 0:
            return acc * x**self.low
        return acc / x ** (-self.low)

    def derivative(self) -> "CoeffPoly":
        return CoeffPoly(
            [c * (self.low + i) for i, c in enumerate(self.coeffs)], self.low - 1
        )

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> "CoeffPoly | None":
        if isinstance(other, CoeffPoly):
            return other
        if _is_rational(other):
            return CoeffPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            return self
        if not self.coeffs:
            return o
        lo = min(self.low, o.low)
        hi = max(self.degree, o.degree)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs, self.low - lo):
            out[i] = c
        for i, c in enumerate(o.coeffs, o.low - lo):
            out[i] += c
        return CoeffPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly._raw(tuple(-c for c in self.coeffs), self.low)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_rational(other):
            if other == 0:
                return CoeffPoly()
            return CoeffPoly._raw(tuple(_norm(c * other) for c in self.coeffs), self.low)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return CoeffPoly()
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, cb in enumerate(b):
            if cb == 0:
                continue
            for i, ca in enumerate(a, j):
                out[i] += ca * cb
        return CoeffPoly(out, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CoeffPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def inverse(self) -> "CoeffPoly":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self!r} is not a unit (not a monomial)")
        return CoeffPoly._raw((_norm(Fraction(1) / self.coeffs[0]),), -self.low)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.low == o.low and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "CoeffPoly(0)"
        parts = []
        for e, c in sorted(self.terms.items()):
            parts.append(f"{c}" if e == 0 else f"{c}*T^{e}")
        return "CoeffPoly(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Jet3
# ---------------------------------------------------------------------------


class Jet3:
    """a0 + a1*eps + a2*eps**2 modulo eps**3, exact rational entries."""

    __slots__ = ("a0", "a1", "a2")

    def __init__(self, a0=0, a1=0, a2=0):
        self.a0 = _norm(a0)
        self.a1 = _norm(a1)
        self.a2 = _norm(a2)

    @staticmethod
    def _lift(x) -> "Jet3 | None":
        if isinstance(x, Jet3):
            return x
        if _is_rational(x):
            return Jet3(x)
        return None

    def __add__(self, other):
        o = Jet3._lift(other)
        if o is None:
            return NotImplemented
        return Jet3(self.a0 + o.a0, self.a1 + o.a1, self.a2 + o.a2)

    __radd__ = __add__

    def __neg__(self):
        return Jet3(-self.a0, -self.a1, -self.a2)

    def __sub__(self, other):
        o = Jet3._lift(other)
        if o is None:
            return NotImplemented
        return Jet3(self.a0 - o.a0, self.a1 - o.a1, self.a2 - o.a2)

    def __rsub__(self, other):
        o = Jet3._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if _is_rational(other):
            return Jet3(self.a0 * other, self.a1 * other, self.a2 * other)
        if not isinstance(other, Jet3):
            return NotImplemented
        a0, a1, a2 = self.a0, self.a1, self.a2
        b0, b1, b2 = other.a0, other.a1, other.a2
        return Jet3(a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Jet3(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_unit(self) -> bool:
        return self.a0 != 0

    def inverse(self) -> "Jet3":
        if self.a0 == 0:
            raise ZeroDivisionError("jet with zero constant term is not invertible")
        inv0 = Fraction(1) / self.a0
        b1 = -self.a1 * inv0 * inv0
        b2 = (self.a1 * self.a1 * inv0 - self.a2) * inv0 * inv0
        return Jet3(inv0, b1, b2)

    def __truediv__(self, other):
        o = Jet3._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def is_zero(self) -> bool:
        return self.a0 == 0 and self.a1 == 0 and self.a2 == 0

    def __eq__(self, other):
        o = Jet3._lift(other)
        if o is None:
            return NotImplemented
        return (self.a0, self.a1, self.a2) == (o.a0, o.a1, o.a2)

    def __hash__(self):
        return hash((self.a0, self.a1, self.a2))

    def __repr__(self):
        return f"Jet3({self.a0}, {self.a1}, {self.a2})"


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


class Ring:
    """Coefficient ring descriptor: zero, one, coercion and unit tests."""

    def __init__(self, name: str, zero, one, element_type):
        self.name = name
        self.zero = zero
        self.one = one
        self.element_type = element_type

    def coerce(self, x):
        if self.element_type is None:
            if not _is_rational(x):
                raise TypeError(f"cannot coerce {x!r} into the rational ring")
            return _norm(x)
        if isinstance(x, self.element_type):
            return x
        if _is_rational(x):
            return self.element_type(x) if self is JET else CoeffPoly((x,))
        raise TypeError(f"cannot coerce {x!r} into ring {self.name}")

    def is_zero(self, x) -> bool:
        return x == 0 if self.element_type is None else x.is_zero()

    def is_unit(self, x) -> bool:
        return x != 0 if self.element_type is None else x.is_unit()

    def inverse(self, x):
        if self.element_type is None:
            if x == 0:
                raise ZeroDivisionError("0 is not a unit")
            return _norm(Fraction(1) / x)
        return x.inverse()

    def __repr__(self):
        return f"Ring({self.name})"


RATIONAL = Ring("rational", 0, 1, None)
POLY = Ring("poly", CoeffPoly(), CoeffPoly((1,)), CoeffPoly)
JET = Ring("jet", Jet3(0), Jet3(1), Jet3)


def ring_of(x) -> Ring:
    if isinstance(x, CoeffPoly):
        return POLY
    if isinstance(x, Jet3):
        return JET
    if _is_rational(x):
        return RATIONAL
    raise TypeError(f"no exact ring for {x!r}")


def _common_ring(a: Ring, b: Ring) -> Ring:
    if a is b:
        return a
    if a is RATIONAL:
        return b
    if b is RATIONAL:
        return a
    raise TypeError(f"incompatible coefficient rings {a.name} and {b.name}")


# ---------------------------------------------------------------------------
# Kronecker-substitution kernel
# ---------------------------------------------------------------------------


def _bits(rows: Sequence[Sequence[int]]) -> int:
    m = 0
    for row in rows:
        for c in row:
            b = c.bit_length()
            if b > m:
                m = b
    return m


def _pack(rows: Sequence[Sequence[int]], slots: int, nbytes: int) -> int:
    """Signed integer sum of rows[i][j] * 2**(8*nbytes*(i*slots + j))."""
    zero = bytes(nbytes)
    pos = []
    neg = []
    has_neg = False
    for row in rows:
        pad = slots - len(row)
        for c in row:
            if c > 0:
                pos.append(c.to_bytes(nbytes, "little"))
                neg.append(zero)
            elif c < 0:
                has_neg = True
                pos.append(zero)
                neg.append((-c).to_bytes(nbytes, "little"))
            else:
                pos.append(zero)
                neg.append(zero)
        if pad:
            pos.append(zero * pad)
            neg.append(zero * pad)
    value = int.from_bytes(b"".join(pos), "little")
    if has_neg:
        value -= int.from_bytes(b"".join(neg), "little")
    return value


def _bigmul(x: int, y: int) -> int:
    if gmpy2 is not None and x.bit_length() + y.bit_length() > _GMP_MIN_BITS:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))
    return x * y


def kronecker_mul(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], n_out: int
) -> list[list[int]]:
    """Truncated product of two integer tables.

    ``a[i][j]`` is the coefficient of ``q**i * X**j``.  Returns the first
    ``n_out`` q-rows of the product, each of inner width
    ``width(a) + width(b) - 1``.
    """
    wa = max((len(r) for r in a), default=0)
    wb = max((len(r) for r in b), default=0)
    if not a or not b or wa == 0 or wb == 0 or n_out <= 0:
        return [[] for _ in range(max(n_out, 0))]
    a = a[:n_out]
    b = b[:n_out]
    slots = wa + wb - 1
    terms = min(len(a), len(b)) * min(wa, wb)
    nbits = _bits(a) + _bits(b) + terms.bit_length() + 2
    nbytes = (nbits + 7) // 8
    x = _pack(a, slots, nbytes)
    y = _pack(b, slots, nbytes)
    p = _bigmul(x, y)
    k = n_out * slots
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes((bytes(nbytes - 1) + b"\x80") * k, "little")
    low = (p + bias) & ((1 << (8 * nbytes * k)) - 1)
    data = low.to_bytes(nbytes * k, "little")
    flat = [
        int.from_bytes(data[i : i + nbytes], "little") - half
        for i in range(0, nbytes * k, nbytes)
    ]
    return [flat[i * slots : (i + 1) * slots] for i in range(n_out)]


def _denominator_lcm(values) -> int:
    d = 1
    for v in values:
        if type(v) is Fraction:
            d = math.lcm(d, v.denominator)
    return d


def _scale_rows(rows, d: int):
    # int() also strips integral Fractions that were not normalized upstream
    return [[int(c * d) for c in row] for row in rows]


def _unscale(c: int, d: int):
    return c if d == 1 else _norm(Fraction(c, d))


# ---------------------------------------------------------------------------
# QSeries
# ---------------------------------------------------------------------------


class QMonomial(NamedTuple):
    """The q-series term ``coef * q**power``."""

    coef: object
    power: int


class QSeries:
    """Truncated power series sum_{k<=N} coeffs[k] q^k over an exact ring.

    Instances are treated as immutable.  Binary operations between series of
    different truncations truncate to the smaller one.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable, ring: Ring | None = None, truncation: int | None = None):
        cs = list(coeffs)
        if ring is None:
            ring = RATIONAL
            for c in cs:
                ring = _common_ring(ring, ring_of(c))
        if truncation is not None:
            if truncation < 0:
                raise ValueError("truncation must be non-negative")
            cs = cs[: truncation + 1] + [ring.zero] * (truncation + 1 - len(cs))
        if not cs:
            raise ValueError("a series needs at least the q^0 coefficient")
        self.coeffs = tuple(ring.coerce(c) for c in cs)
        self.ring = ring

    @classmethod
    def _raw(cls, coeffs, ring: Ring) -> "QSeries":
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.ring = ring
        return s

    @classmethod
    def one(cls, truncation: int, ring: Ring = RATIONAL) -> "QSeries":
        return cls._raw([ring.one] + [ring.zero] * truncation, ring)

    @classmethod
    def zero(cls, truncation: int, ring: Ring = RATIONAL) -> "QSeries":
        return cls._raw([ring.zero] * (truncation + 1), ring)

    @classmethod
    def monomial(cls, coef, power: int, truncation: int, ring: Ring | None = None) -> "QSeries":
        ring = ring or ring_of(coef)
        cs = [ring.zero] * (truncation + 1)
        if 0 <= power <= truncation:
            cs[power] = ring.coerce(coef)
        return cls._raw(cs, ring)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def change_ring(self, ring: Ring) -> "QSeries":
        if ring is self.ring:
            return self
        _common_ring(self.ring, ring)
        return QSeries._raw([ring.coerce(c) for c in self.coeffs], ring)

    def truncate(self, n: int) -> "QSeries":
        if n >= self.truncation:
            return self
        return QSeries._raw(self.coeffs[: n + 1], self.ring)

    def _align(self, other: "QSeries"):
        ring = _common_ring(self.ring, other.ring)
        n = min(self.truncation, other.truncation)
        return self.truncate(n).change_ring(ring), other.truncate(n).change_ring(ring), ring

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b, ring = self._align(other)
        return QSeries._raw([x + y for x, y in zip(a.coeffs, b.coeffs)], ring)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b, ring = self._align(other)
        return QSeries._raw([x - y for x, y in zip(a.coeffs, b.coeffs)], ring)

    def __neg__(self):
        return QSeries._raw([-c for c in self.coeffs], self.ring)

    def scale(self, c) -> "QSeries":
        """Multiply every coefficient by the ring element ``c``."""
        ring = _common_ring(self.ring, ring_of(c))
        c = ring.coerce(c)
        if ring.is_zero(c):
            return QSeries.zero(self.truncation, ring)
        return QSeries._raw([c * x for x in self.change_ring(ring).coeffs], ring)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        return series_pow(self, k)

    def shift(self, s: int) -> "QSeries":
        """Multiply by q**s (s >= 0), keeping the truncation."""
        if s < 0:
            raise ValueError("shift must be non-negative")
        n = self.truncation
        if s > n:
            return QSeries.zero(n, self.ring)
        return QSeries._raw([self.ring.zero] * s + list(self.coeffs[: n + 1 - s]), self.ring)

    def dilate(self, k: int, truncation: int | None = None) -> "QSeries":
        """Substitute q -> q**k, re-truncated at ``truncation``.

        The result is exact up to q**min(truncation, k*(N+1) - 1); asking for
        more than the input determines is an error.
        """
        if k < 1:
            raise ValueError("dilation factor must be positive")
        n_out = self.truncation * k if truncation is None else truncation
        if n_out > k * (self.truncation + 1) - 1:
            raise ValueError("input series too short for the requested truncation")
        out = [self.ring.zero] * (n_out + 1)
        for i in range(0, n_out // k + 1):
            out[i * k] = self.coeffs[i]
        return QSeries._raw(out, self.ring)

    def mul_binomial(self, c, s: int) -> "QSeries":
        """Multiply by the sparse factor (1 + c*q**s), s >= 1."""
        if s < 1:
            raise ValueError("binomial factor needs a positive q-power")
        ring = _common_ring(self.ring, ring_of(c))
        src = self.change_ring(ring).coeffs
        c = ring.coerce(c)
        out = list(src)
        for i in range(s, len(out)):
            x = src[i - s]
            if x != 0:
                out[i] = out[i] + c * x
        return QSeries._raw(out, ring)

    def div_binomial(self, c, s: int) -> "QSeries":
        """Divide by the sparse factor (1 + c*q**s), s >= 1."""
        if s < 1:
            raise ValueError("binomial factor needs a positive q-power")
        ring = _common_ring(self.ring, ring_of(c))
        out = list(self.change_ring(ring).coeffs)
        c = ring.coerce(c)
        for i in range(s, len(out)):
            x = out[i - s]
            if x != 0:
                out[i] = out[i] - c * x
        return QSeries._raw(out, ring)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.truncation == other.truncation and all(
            x == y for x, y in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        shown = ", ".join(repr(c) for c in self.coeffs[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"QSeries([{shown}{more}], ring={self.ring.name}, N={self.truncation})"


# ---------------------------------------------------------------------------
# series operations
# ---------------------------------------------------------------------------


def series_add(f: QSeries, g: QSeries) -> QSeries:
    return f + g


def _mul_schoolbook(a: Sequence, b: Sequence, n: int, zero) -> list:
    out = [zero] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x == 0:
            continue
        for j in range(0, n + 1 - i):
            y = b[j]
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return out


def _mul_rational(a: Sequence, b: Sequence, n: int) -> list:
    da = _denominator_lcm(a)
    db = _denominator_lcm(b)
    ra = [[c] for c in _scale_rows([list(a)], da)[0]]
    rb = [[c] for c in _scale_rows([list(b)], db)[0]]
    rows = kronecker_mul(ra, rb, n + 1)
    d = da * db
    return [_unscale(r[0], d) if r else 0 for r in rows]


def _mul_poly(a: Sequence[CoeffPoly], b: Sequence[CoeffPoly], n: int) -> list:
    def table(seq):
        nonzero = [p for p in seq if p.coeffs]
        if not nonzero:
            return None
        lo = min(p.low for p in nonzero)
        rows = []
        for p in seq:
            if p.coeffs:
                rows.append([0] * (p.low - lo) + list(p.coeffs))
            else:
                rows.append([])
        d = _denominator_lcm(c for p in nonzero for c in p.coeffs)
        return _scale_rows(rows, d), lo, d

    ta, tb = table(a), table(b)
    if ta is None or tb is None:
        return [POLY.zero] * (n + 1)
    rows_a, lo_a, da = ta
    rows_b, lo_b, db = tb
    out_rows = kronecker_mul(rows_a, rows_b, n + 1)
    d = da * db
    lo = lo_a + lo_b
    if d == 1:
        return [CoeffPoly(r, lo) for r in out_rows]
    return [CoeffPoly([Fraction(c, d) for c in r], lo) for r in out_rows]


def _mul_jet(a: Sequence[Jet3], b: Sequence[Jet3], n: int) -> list:
    da = _denominator_lcm(v for j in a for v in (j.a0, j.a1, j.a2))
    db = _denominator_lcm(v for j in b for v in (j.a0, j.a1, j.a2))
    rows_a = _scale_rows([[j.a0, j.a1, j.a2] for j in a], da)
    rows_b = _scale_rows([[j.a0, j.a1, j.a2] for j in b], db)
    out_rows = kronecker_mul(rows_a, rows_b, n + 1)
    d = da * db
    return [Jet3(_unscale(r[0], d), _unscale(r[1], d), _unscale(r[2], d)) for r in out_rows]


def series_mul(f: QSeries, g: QSeries, *, method: str = "auto") -> QSeries:
    """Truncated product; ``method`` is "auto", "kronecker" or "schoolbook"."""
    a, b, ring = f._align(g)
    n = a.truncation
    if method == "schoolbook" or (
        method == "auto" and (n + 1) * (n + 1) < _KRONECKER_MIN_SLOTS
    ):
        return QSeries._raw(_mul_schoolbook(a.coeffs, b.coeffs, n, ring.zero), ring)
    if ring is RATIONAL:
        out = _mul_rational(a.coeffs, b.coeffs, n)
    elif ring is POLY:
        out = _mul_poly(a.coeffs, b.coeffs, n)
    else:
        out = _mul_jet(a.coeffs, b.coeffs, n)
    return QSeries._raw(out, ring)


def series_pow(f: QSeries, k: int) -> QSeries:
    if k < 0:
        return series_pow(series_inv(f), -k)
    result = QSeries.one(f.truncation, f.ring)
    base = f
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def series_inv(f: QSeries) -> QSeries:
    """Multiplicative inverse up to the truncation (Newton iteration)."""
    ring = f.ring
    f0 = f.coeffs[0]
    if not ring.is_unit(f0):
        raise ZeroDivisionError(f"constant term {f0!r} is not a unit")
    n = f.truncation
    g = QSeries._raw([ring.inverse(f0)], ring)
    prec = 1
    while prec < n + 1:
        prec = min(2 * prec, n + 1)
        ft = f.truncate(prec - 1)
        gt = QSeries._raw(list(g.coeffs) + [ring.zero] * (prec - len(g.coeffs)), ring)
        e = series_mul(ft, gt)
        # g <- g * (2 - f*g)
        two_minus = QSeries._raw([ring.coerce(2) - e.coeffs[0]] + [-c for c in e.coeffs[1:]], ring)
        g = series_mul(gt, two_minus)
    return g


def pochhammer(a, q_step: int, count, truncation: int, ring: Ring | None = None) -> QSeries:
    """(a; q**q_step)_count = prod_{j<count} (1 - a*q**(j*q_step)), truncated.

    ``a`` is a ring element or a :class:`QMonomial`.  ``count`` may be
    ``math.inf``; the product then stops once factors only touch degrees
    beyond the truncation.
    """
    if q_step < 1:
        raise ValueError("q_step must be a positive integer")
    if isinstance(a, QMonomial):
        coef, power = a
    else:
        coef, power = a, 0
    if ring is None:
        ring = ring_of(coef)
    coef = ring.coerce(coef)
    if count == INF:
        if power <= 0:
            raise ValueError("infinite product does not terminate: a has no positive q-power")
    elif count < 0 or int(count) != count:
        raise ValueError("count must be a non-negative integer or math.inf")
    result = QSeries.one(truncation, ring)
    neg = -coef
    j = 0
    while j < count:
        e = power + j * q_step
        if e > truncation:
            break
        if e == 0:
            result = result.scale(ring.one - coef)
        else:
            result = result.mul_binomial(neg, e)
        j += 1
    return result
