import cmath
import math
import random
from fractions import Fraction

import pytest

from torusindex.fedosov import (
    CapError, WeylFormSection, WeylSection, check_suite, connection_form, fedosov_D,
    fedosov_D_commutator, quantize, random_fourier, star_via_fedosov, weyl_product,
)
from torusindex.fourier import FourierPoly, moyal_star, poisson_bracket
from torusindex.scalar import EXACT, NumericField
from torusindex.series import FormalLaurent


def e(k1, k2, trunc=6):
    return FourierPoly.mode((k1, k2), trunc=trunc)


def test_moyal_phase_closed_form():
    p = e(1, 0) * e(0, 1)
    c = EXACT.monomial(2, pi=2, theta=1) * EXACT.i
    assert p[(1, 1)] == FormalLaurent.exp_linear(c)


def test_moyal_associative(rng):
    for _ in range(5):
        a, b, c = (random_fourier(rng, 1, 4, count=3) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_poisson_bracket_sign():
    pb = poisson_bracket(e(1, 0), e(0, 1))
    assert pb[(1, 1)][0] == EXACT.monomial(-4, pi=2, theta=1)


def test_commutator_is_minus_i_hbar_bracket(rng):
    for _ in range(10):
        a, b = random_fourier(rng, 2, 4, count=3), random_fourier(rng, 2, 4, count=3)
        comm = a * b - b * a
        pb = poisson_bracket(a, b)
        for k in set(comm.coeffs) | set(pb.coeffs):
            assert comm[k][0].is_zero()
            assert comm[k][1] == -(EXACT.i * pb[k][0])


def test_trace_property_and_translation(rng):
    a, b = random_fourier(rng, 2, 4, count=4), random_fourier(rng, 2, 4, count=4)
    assert (a * b - b * a).integral().is_zero()
    # translation is an automorphism of the star product
    assert (a * b).translate(1) == a.translate(1) * b.translate(1)


def test_translate_numeric_value():
    F = NumericField(alpha=0.25, beta=0.1)
    f = FourierPoly.mode((1, 0), field=F).translate(1)
    # f(x - alpha) for f = exp(2 pi i x)
    assert abs(f[(1, 0)][0].value - cmath.exp(-2j * math.pi * 0.25)) < 1e-14


def test_weyl_commutator():
    y1, y2 = WeylSection.y(1, cap=8), WeylSection.y(2, cap=8)
    c = weyl_product(y1, y2) - weyl_product(y2, y1)
    assert c.terms == {(0, 0, 0, 0, 1): -EXACT.i * EXACT.theta}


def test_D_on_fiber_coordinate():
    D = fedosov_D(WeylSection.y(1, cap=8))
    assert D.comps[(1,)].terms == {(0, 0, 0, 0, 0): -EXACT.one}


def test_quantization_is_flat_and_symbol_roundtrips():
    f = FourierPoly.mode((1, 2), trunc=4) + FourierPoly.mode((-1, 0), EXACT.u, trunc=4)
    q = quantize(f, 8)
    assert fedosov_D(q).is_zero()
    assert q.symbol() == f


def test_star_via_fedosov_equals_moyal(rng):
    f, g = random_fourier(rng, 2, 6, count=6), random_fourier(rng, 2, 6, count=6)
    assert star_via_fedosov(f, g) == moyal_star(f, g)


def test_full_weyl_product_symbol():
    f, g = e(1, 2, 4), e(-1, 1, 4)
    prod = weyl_product(quantize(f, 8), quantize(g, 8)).symbol()
    ref = f * g
    assert prod == FourierPoly({k: c.truncate(4) for k, c in ref.coeffs.items()}, EXACT, 4)


def test_cap_error():
    with pytest.raises(CapError):
        star_via_fedosov(e(1, 0), e(0, 1), order=6, cap=10)


def test_D_squared_and_commutator_form():
    out = check_suite(K=1, order=4, seed=3, pairs=2)
    assert all(v for k, v in out.items() if k != "cap")


def test_connection_form_shape():
    A = connection_form(cap=6)
    assert set(A.comps) == {(1,), (2,)}
    assert A.comps[(1,)].terms == {(0, 1, 0, 0, 0): EXACT.theta.inverse()}
