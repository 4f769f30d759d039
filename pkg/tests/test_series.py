from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hookdist.series import (
    INF,
    JET,
    POLY,
    RATIONAL,
    CoeffPoly,
    Jet3,
    QMonomial,
    QSeries,
    kronecker_mul,
    pochhammer,
    series_inv,
    series_mul,
    series_pow,
)

small = st.integers(-50, 50)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.builds(CoeffPoly, st.lists(small, max_size=5), st.integers(-3, 3))
jets = st.builds(Jet3, small, small, small)


def series_of(elems, n=12):
    return st.lists(elems, min_size=n + 1, max_size=n + 1)


@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == CoeffPoly()


@given(polys, st.integers(-4, 4))
def test_poly_evaluation_is_homomorphism(a, x):
    b = CoeffPoly([1, 2], 0)
    x = Fraction(x) if x else Fraction(1, 3)
    assert (a * b)(x) == a(x) * b(x)


def test_poly_basics():
    T = CoeffPoly.T()
    p = (T + 1) ** 3
    assert p.dense() == [1, 3, 3, 1]
    assert p.derivative() == 3 * (T + 1) ** 2
    assert T.inverse() * T == CoeffPoly.constant(1)
    assert not (T + 1).is_unit()
    assert CoeffPoly([0, 0, 5, 0], -1).terms == {1: 5}
    with pytest.raises(ZeroDivisionError):
        (T + 1).inverse()


@given(jets, jets, jets)
def test_jet_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


@given(st.lists(small, min_size=1, max_size=6))
def test_jet_matches_taylor_of_polynomial(cs):
    # p(1 + eps) = p(1) + p'(1) eps + p''(1)/2 eps^2
    p = CoeffPoly(cs)
    jet = Jet3(0)
    for c in reversed(cs):
        jet = jet * Jet3(1, 1) + c
    d1 = p.derivative()
    assert jet == Jet3(p(1) if p.coeffs else 0, d1(1) if d1.coeffs else 0,
                       Fraction(d1.derivative()(1), 2) if d1.derivative().coeffs else 0)


@given(series_of(small), series_of(small))
def test_kronecker_matches_schoolbook_integers(a, b):
    f, g = QSeries(a), QSeries(b)
    assert series_mul(f, g, method="kronecker") == series_mul(f, g, method="schoolbook")


@given(series_of(rationals, 9), series_of(rationals, 9))
def test_kronecker_matches_schoolbook_rationals(a, b):
    f, g = QSeries(a), QSeries(b)
    assert series_mul(f, g, method="kronecker") == series_mul(f, g, method="schoolbook")


@given(series_of(polys, 8), series_of(polys, 8))
def test_kronecker_matches_schoolbook_poly(a, b):
    f, g = QSeries(a, POLY), QSeries(b, POLY)
    assert series_mul(f, g, method="kronecker") == series_mul(f, g, method="schoolbook")


@given(series_of(jets, 8), series_of(jets, 8))
def test_kronecker_matches_schoolbook_jet(a, b):
    f, g = QSeries(a, JET), QSeries(b, JET)
    assert series_mul(f, g, method="kronecker") == series_mul(f, g, method="schoolbook")


def test_kronecker_mul_table():
    # (1 + X q) * (1 - X q) = 1 - X^2 q^2
    out = kronecker_mul([[1], [0, 1]], [[1], [0, -1]], 3)
    assert [r + [0] * (3 - len(r)) for r in out] == [[1, 0, 0], [0, 0, 0], [0, 0, -1]]


def test_kronecker_large_coefficients():
    a = [(-1) ** k * 10**40 * k for k in range(80)]
    b = [3**k for k in range(80)]
    f, g = QSeries(a), QSeries(b)
    assert series_mul(f, g, method="kronecker") == series_mul(f, g, method="schoolbook")


@given(series_of(rationals, 10).filter(lambda c: c[0] != 0))
def test_inverse(cs):
    f = QSeries(cs)
    assert series_mul(f, series_inv(f)) == QSeries.one(10)


def test_inverse_of_nonunit_raises():
    with pytest.raises(ZeroDivisionError):
        series_inv(QSeries([0, 1, 2]))


@given(series_of(small, 8), st.integers(0, 4))
def test_pow_matches_repeated_product(cs, k):
    f = QSeries(cs)
    expected = QSeries.one(8)
    for _ in range(k):
        expected = series_mul(expected, f, method="schoolbook")
    assert series_pow(f, k) == expected


def _partition_counts(n):
    p = [1] + [0] * n
    for part in range(1, n + 1):
        for m in range(part, n + 1):
            p[m] += p[m - part]
    return p


def test_euler_function_inverse_counts_partitions():
    N = 60
    euler = pochhammer(QMonomial(1, 1), 1, INF, N)
    assert list(series_inv(euler)) == _partition_counts(N)


def test_pentagonal_number_theorem():
    N = 60
    euler = pochhammer(QMonomial(1, 1), 1, INF, N)
    expected = [0] * (N + 1)
    for k in range(-10, 11):
        e = k * (3 * k - 1) // 2
        if 0 <= e <= N:
            expected[e] += (-1) ** k
    assert list(euler) == expected


@given(st.integers(0, 6), st.integers(1, 3), st.integers(0, 3))
def test_finite_pochhammer_matches_product(count, step, power):
    N = 25
    expected = QSeries.one(N)
    for j in range(count):
        factor = QSeries.monomial(-2, power + j * step, N) + QSeries.one(N)
        expected = series_mul(expected, factor, method="schoolbook")
    assert pochhammer(QMonomial(2, power), step, count, N) == expected


def test_pochhammer_infinite_needs_positive_power():
    with pytest.raises(ValueError):
        pochhammer(QMonomial(1, 0), 1, INF, 10)


def test_binomial_mul_div_roundtrip():
    f = QSeries([Fraction(k, k + 1) for k in range(20)])
    assert f.mul_binomial(3, 4).div_binomial(3, 4) == f


def test_truncation_is_minimum():
    f = QSeries([1, 1, 1, 1])
    g = QSeries([1, 1])
    assert (f + g).truncation == 1
    assert series_mul(f, g).truncation == 1


def test_dilate_and_shift():
    f = QSeries([1, 2, 3])
    assert list(f.dilate(2, 5)) == [1, 0, 2, 0, 3, 0]
    assert list(f.shift(1)) == [0, 1, 2]


def test_ring_change_keeps_values():
    f = QSeries([1, 2, 3])
    assert f.change_ring(POLY)[2] == CoeffPoly.constant(3)
    assert f.change_ring(JET)[1] == Jet3(2)
    assert f.ring is RATIONAL


def test_kronecker_accepts_integral_fractions():
    f = QSeries([Fraction(k) for k in range(1, 40)])
    assert series_mul(f, f, method="kronecker") == series_mul(f, f, method="schoolbook")
