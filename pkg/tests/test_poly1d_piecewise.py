import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from torusindex import poly1d as P1
from torusindex.piecewise import (
    ExactReal, PiecewiseError, PiecewiseFn, check_rieffel_params, rieffel_functions,
)
from torusindex.crossed import rieffel_identities

X = sympy.Symbol("x")


def rand_poly(rng, deg=4):
    return P1.trim(tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(deg + 1)))


def test_poly_ops_against_sympy():
    rng = random.Random(3)
    for _ in range(20):
        p, q = rand_poly(rng), rand_poly(rng)
        sp, sq = P1.to_sympy(p, X), P1.to_sympy(q, X)
        assert sympy.expand(P1.to_sympy(P1.mul(p, q), X) - sp * sq) == 0
        assert sympy.expand(P1.to_sympy(P1.deriv(p), X) - sympy.diff(sp, X)) == 0
        s = Fraction(rng.randint(-3, 3), 5)
        assert sympy.expand(P1.to_sympy(P1.taylor_shift(p, s), X) - sp.subs(X, X + s)) == 0
        a, b = Fraction(1, 7), Fraction(5, 6)
        assert P1.definite_integral(p, a, b) == sympy.integrate(sp, (X, a, b))


def test_rieffel_integrals_exact(rieffel):
    _, f, g = rieffel
    assert f.integrate() == ExactReal(Fraction(3, 10))
    assert (g * g * f.derive()).integrate().to_fraction() == Fraction(-1, 6)
    assert abs(f.integrate("quad") - 0.3) < 1e-12


@pytest.mark.parametrize("ramp", ["quintic", "cubic"])
@pytest.mark.parametrize("alpha,eps", [(Fraction(3, 10), Fraction(1, 10)),
                                       (Fraction(37, 100), Fraction(1, 20))])
def test_rieffel_identities_and_g_squared(ramp, alpha, eps):
    f, g = rieffel_functions(alpha, eps, ramp)
    assert all(rieffel_identities(f, g, alpha).values())
    # g^2 = f - f^2 exactly on the support of g, and g vanishes on the rising ramp
    diff = g * g - (f - f * f)
    on_support = [p for p in diff.pieces if alpha <= p.a and p.b <= alpha + eps]
    assert on_support and all(p.is_zero() for p in on_support)
    assert (g * g.translate(alpha)).is_zero() and (g * g.translate(-alpha)).is_zero()
    assert f.check_continuity() and g.check_continuity()
    assert (g * g * f.derive()).integrate().to_fraction() == Fraction(-1, 6)


def test_root_integral_matches_quadrature(rieffel):
    _, f, g = rieffel
    val = g.integrate()
    assert not val.is_rational()
    assert abs(float(val) - g.integrate("quad")) < 1e-10


def test_parameter_constraints():
    with pytest.raises(PiecewiseError):
        check_rieffel_params(Fraction(3, 10), Fraction(35, 100))
    with pytest.raises(PiecewiseError):
        rieffel_functions(Fraction(35, 100), Fraction(2, 10))


def test_translate_wraps_and_samples(rieffel):
    _, f, _ = rieffel
    xs = np.linspace(0, 1, 101, endpoint=False)
    s = Fraction(3, 10)
    assert np.allclose(f.translate(s)(xs), f(xs - 0.3), atol=1e-12)


def test_translation_invariant_integral(rieffel):
    _, f, g = rieffel
    h = f * f + g.derive() * g
    assert h.translate(Fraction(7, 13)).integrate() == h.integrate()


def test_discontinuity_detected():
    h = PiecewiseFn.from_polys([0, Fraction(1, 2)], [(Fraction(0),), (Fraction(1),)])
    assert not h.check_continuity()
