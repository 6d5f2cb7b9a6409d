from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torusindex.scalar import EXACT, NumericField
from torusindex.series import FormalLaurent, SeriesError, format_series

fr = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def series(draw, lo=0, hi=4, unit=False):
    coeffs = draw(st.dictionaries(st.integers(lo, hi), fr, max_size=4))
    if unit:
        coeffs[lo] = draw(fr.filter(lambda q: q != 0))
    return FormalLaurent(EXACT, {n: EXACT.const(c) * EXACT.theta ** (n % 2) for n, c in coeffs.items()})


@settings(max_examples=50, deadline=None)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(series(lo=-1, hi=3, unit=True))
def test_inverse(a):
    inv = a.invert()
    prod = a * inv
    assert prod == FormalLaurent.one(EXACT, prod.trunc)


def test_truncation_rules():
    a = FormalLaurent(EXACT, {-1: 1, 2: 3}, trunc=6)
    b = FormalLaurent(EXACT, {0: 1}, trunc=4)
    assert (a * b).trunc == 3          # min(6, 4, 6 + 0, 4 - 1)
    assert a.invert().trunc == 6       # min(N, N - 2v) with v = -1
    c = FormalLaurent(EXACT, {1: 2}, trunc=6)
    assert c.invert().trunc == 4       # v = 1 costs two orders


def test_floor_enforced():
    a = FormalLaurent(EXACT, {3: 1}, trunc=6, floor=2)
    with pytest.raises(SeriesError):
        a.invert()


def test_text_form():
    s = FormalLaurent.monomial(EXACT.monomial(-1, theta=-1), -1)
    assert format_series(s) == "-1 * h^-1 * theta^-1"
    assert str(FormalLaurent.zero(EXACT)) == "0"
    two = FormalLaurent(EXACT, {0: EXACT.one - EXACT.u})
    assert str(two).startswith("(")


def test_exp_linear_matches_power_series():
    c = EXACT.i * EXACT.theta
    e = FormalLaurent.exp_linear(c)
    for n in range(7):
        fact = 1
        for j in range(2, n + 1):
            fact *= j
        assert e[n] == c ** n * EXACT.const(Fraction(1, fact))


def test_numeric_evaluation():
    F = NumericField(theta=0.5)
    s = FormalLaurent(EXACT, {1: EXACT.theta.inverse()}).evaluate(F)
    assert abs(s[1].value - 2.0) < 1e-15
