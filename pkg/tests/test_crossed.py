from fractions import Fraction

import pytest

from torusindex.crossed import (
    CrossedElement, CrossedError, MatrixCrossed, idempotent_residual, mat_identity,
    rieffel_identities, rieffel_projection, subalgebra_embed, unit_fourier,
)
from torusindex.fedosov import random_fourier
from torusindex.fourier import FourierPoly
from torusindex.piecewise import PiecewiseError, PiecewiseFn
from torusindex.pwseries import PWSeries
from torusindex.scalar import EXACT


def rand_elem(rng):
    tmpl = FourierPoly({})
    return CrossedElement({rng.randint(-1, 1): random_fourier(rng, 1, 6, count=2)
                           for _ in range(2)}, tmpl)


def test_covariance_relation():
    tmpl = FourierPoly({})
    W = CrossedElement.W(tmpl)
    Winv = CrossedElement.W(tmpl, -1)
    f = CrossedElement.monomial(FourierPoly.mode((1, 0)))
    lhs = W * f * Winv
    assert lhs == CrossedElement.monomial(FourierPoly.mode((1, 0)).translate(1))
    assert lhs[0][(1, 0)][0] == EXACT.u


def test_associativity(rng):
    for _ in range(10):
        x, y, z = rand_elem(rng), rand_elem(rng), rand_elem(rng)
        assert (x * y) * z == x * (y * z)


def test_mixed_modes_rejected(rieffel):
    e, _, _ = rieffel
    with pytest.raises(CrossedError):
        CrossedElement({0: FourierPoly.constant(1), 1: e[1]}, FourierPoly({}))


def test_rieffel_idempotent(rieffel):
    e, f, g = rieffel
    assert (e * e - e).is_zero()
    res = idempotent_residual(e)
    assert not res["exact"] and res["residual"] < 1e-9
    assert all(rieffel_identities(f, g, Fraction(3, 10)).values())


def test_grid_residual_detects_non_idempotent(rieffel):
    e, _, _ = rieffel
    bad = e + subalgebra_embed(PiecewiseFn.constant(Fraction(1, 100)))
    assert idempotent_residual(bad)["residual"] > 1e-3


def test_cubic_ramp_idempotent():
    e, _, _ = rieffel_projection(Fraction(37, 100), Fraction(1, 20), "cubic")
    assert idempotent_residual(e)["residual"] < 1e-9


def test_constraint_violation():
    with pytest.raises(PiecewiseError):
        rieffel_projection(Fraction(3, 10), Fraction(35, 100))


def test_trace_of_e2(rieffel):
    e, _, _ = rieffel
    assert e.trace().coeffs[0].to_fraction() == Fraction(3, 10)


def test_number_operator_is_derivation(rng):
    x, y = rand_elem(rng), rand_elem(rng)
    assert (x * y).number_operator() == x.number_operator() * y + x * y.number_operator()
    assert (x * y).deriv(1) == x.deriv(1) * y + x * y.deriv(1)


def test_matrix_algebra(rieffel):
    e, _, _ = rieffel
    one = e.one_like()
    E = MatrixCrossed([[e, e.zero_like()], [e.zero_like(), one]])
    assert (E * E - E).is_zero()
    assert idempotent_residual(E)["residual"] < 1e-9
    I = mat_identity(2, e.template)
    assert ((I * E) - E).is_zero()


def test_fourier_matrix_idempotent_exact():
    u = unit_fourier()
    E = MatrixCrossed([[u, u.zero_like()], [u.zero_like(), u.zero_like()]])
    assert idempotent_residual(E)["zero"]


def test_series_inverse_in_subalgebra():
    h = PiecewiseFn.from_polys([0, Fraction(1, 2)], [(Fraction(0), Fraction(2)), (Fraction(2), Fraction(-2))])
    u = PWSeries({0: PiecewiseFn.constant(1), 1: h}, Fraction(3, 10))
    assert (u * u.invert() - u.one_like()).is_zero()
