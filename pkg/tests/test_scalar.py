import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torusindex.scalar import EXACT, BackendMismatch, NotInvertible, NumericField, format_exact

small = st.integers(-4, 4)
exps = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
coeff = st.tuples(st.fractions(min_value=-5, max_value=5, max_denominator=6), small)


@st.composite
def exact_scalars(draw, max_terms=3):
    terms = draw(st.lists(st.tuples(coeff, exps), min_size=1, max_size=max_terms))
    out = EXACT.zero
    for (re, im), (p, t, u, v) in terms:
        out = out + EXACT.monomial((re, im), pi=p, theta=t, u=u, v=v)
    return out


POINT = (math.pi, 0.7, cmath.exp(0.3j), cmath.exp(-1.1j))


def ev(s):
    return s.evaluate(*POINT)


@settings(max_examples=60, deadline=None)
@given(exact_scalars(), exact_scalars(), exact_scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == EXACT.zero


@settings(max_examples=60, deadline=None)
@given(exact_scalars(), exact_scalars())
def test_evaluation_is_a_homomorphism(a, b):
    assert abs(ev(a * b) - ev(a) * ev(b)) < 1e-8 * (1 + abs(ev(a) * ev(b)))
    assert abs(ev(a + b) - ev(a) - ev(b)) < 1e-8 * (1 + abs(ev(a)) + abs(ev(b)))


@settings(max_examples=40, deadline=None)
@given(exact_scalars(max_terms=2))
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(NotInvertible):
            a.inverse()
    else:
        assert a * a.inverse() == EXACT.one


def test_non_monomial_inverse_and_printing():
    s = EXACT.one - EXACT.u
    inv = s.inverse()
    assert inv * s == EXACT.one
    assert abs(ev(inv) - 1 / (1 - POINT[2])) < 1e-12
    assert format_exact(EXACT.monomial(-1, theta=-1)) == "-theta^-1"


def test_to_fraction():
    assert EXACT.const(Fraction(3, 7)).to_fraction() == Fraction(3, 7)
    assert not EXACT.theta.is_rational_constant()
    with pytest.raises(ValueError):
        EXACT.i.to_fraction()


def test_conjugation():
    z = EXACT.const((1, 2)) * EXACT.u
    assert z.conjugate_formal() == EXACT.const((1, -2)) * EXACT.u


def test_numeric_binding_and_mismatch():
    F = NumericField(theta=2.0, alpha=0.25, beta=0.5)
    assert abs(F.u.value - cmath.exp(-2j * math.pi * 0.25)) < 1e-15
    x = F.from_exact(EXACT.theta * EXACT.u)
    assert abs(x.value - 2.0 * F.u_value) < 1e-14
    with pytest.raises(BackendMismatch):
        EXACT.coerce(F.one)
    with pytest.raises(BackendMismatch):
        NumericField(theta=3.0).coerce(F.one)


def test_near_resonances():
    assert NumericField(alpha=0.3, beta=0.7).near_resonances(1) == [(-1, -1), (1, 1)]
    assert NumericField().near_resonances(3) == []
