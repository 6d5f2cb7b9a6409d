from fractions import Fraction

import pytest
import sympy

from torusindex.cocycles import (
    N_SYMBOLS, CochainError, SimplicialCochain, conjugate, e1, e2, enumerate_xi3_components,
    generators, hochschild_coboundary_value, index_pairing, phi_xi0, phi_xi2, phi_xi3,
    psi_chern_report, random_homotopies, simplicial_closed, xi3_prefactor, COCYCLES,
)
from torusindex.crossed import CrossedElement, MatrixCrossed
from torusindex.cyclic import Chain
from torusindex.fedosov import random_fourier
from torusindex.fourier import FourierPoly
from torusindex.scalar import EXACT, NumericField
from torusindex.series import FormalLaurent


def hbar_theta(c, n):
    return FormalLaurent.monomial(EXACT.monomial(c, theta=-1), n)


@pytest.mark.parametrize("name", sorted(generators()))
def test_generators_closed(name):
    ok, res = simplicial_closed(generators()[name])
    assert ok, res


def test_eta3_face_sum():
    x = generators()["eta3"]
    assert x.evaluate((-2, 2)) == {(): {(0, 0): 2}}


def test_non_closed_cochains_detected():
    n1 = N_SYMBOLS[1]
    ok, res = simplicial_closed(SimplicialCochain(1, {(): {(0, 0): n1 ** 2}}))
    assert not ok and res["delta"]
    ok, res = simplicial_closed(SimplicialCochain(0, {(): {(1, 0): 1}}))
    assert not ok and res["d"]


def test_mixed_degrees_rejected():
    with pytest.raises(CochainError):
        SimplicialCochain(0, {(): {(0, 0): 1}, (1,): {(0, 0): 1}})


def test_trace_pairings(rieffel):
    e, _, _ = rieffel
    assert index_pairing("xi0", e1()) == hbar_theta(-1, -1)
    assert str(index_pairing("xi0", e1())) == "-1 * h^-1 * theta^-1"
    assert index_pairing("xi0", e) == hbar_theta(Fraction(-3, 10), -1)
    num = index_pairing("xi0", e, field=NumericField(1.0, 0.3))
    assert abs(num[-1].value + 0.3) < 1e-12


def test_vanishing_pairings(rieffel):
    e, _, _ = rieffel
    assert index_pairing("xi2", e).is_zero()
    assert index_pairing("xi3", e1()).is_zero()
    assert index_pairing("xi2", e1()).is_zero()


def test_degree_two_pairing(rieffel):
    e, _, _ = rieffel
    assert index_pairing("xi3", e) == hbar_theta(1, 1)
    q = index_pairing("xi3", e, field=NumericField(1.0, 0.3), method="quad")
    assert abs(q[1].value - 1) < 1e-6


def test_prefactor_enumeration():
    pref, ramp = xi3_prefactor()
    assert ramp == Fraction(-1, 6)
    assert pref == -6
    comps = enumerate_xi3_components(e2())
    assert set(comps) == {(1, -1, 0), (-1, 1, 0), (0, 1, -1), (0, -1, 1)}
    assert sum(comps.values()) == 1


@pytest.mark.parametrize("ramp", ["quintic", "cubic"])
def test_ramp_independence(ramp):
    e = e2(Fraction(37, 100), Fraction(1, 20), ramp)
    assert index_pairing("xi3", e) == hbar_theta(1, 1)
    assert index_pairing("xi0", e) == hbar_theta(Fraction(-37, 100), -1)


def test_arity_mismatch(rieffel):
    e, _, _ = rieffel
    with pytest.raises(CochainError):
        index_pairing(COCYCLES["xi3"], e, k=0)
    with pytest.raises(CochainError):
        COCYCLES["xi2"](e, e)


def test_normalization(rng):
    tmpl = FourierPoly({})
    one = CrossedElement.monomial(FourierPoly.constant(1))
    a = CrossedElement({1: random_fourier(rng, 1, 6, count=2),
                        0: random_fourier(rng, 1, 6, count=2)}, tmpl)
    assert phi_xi3(a, one, a).is_zero() and phi_xi3(a, a, one).is_zero()
    assert phi_xi2(a, one, a).is_zero() and phi_xi2(a, a, one).is_zero()


def test_xi0_is_a_trace(rng):
    tmpl = FourierPoly({})
    for _ in range(5):
        a = CrossedElement({rng.randint(-1, 1): random_fourier(rng, 1, 6, count=2)}, tmpl)
        b = CrossedElement({rng.randint(-1, 1): random_fourier(rng, 1, 6, count=2)}, tmpl)
        assert phi_xi0(a * b - b * a).is_zero()


def test_hochschild_cocycles(rng):
    tmpl = FourierPoly({})
    for _ in range(20):
        args = [CrossedElement({rng.randint(-1, 1): random_fourier(rng, 1, 6, count=2)}, tmpl)
                for _ in range(4)]
        c = Chain.elementary(*args)
        for name in ("xi2", "xi3"):
            assert hochschild_coboundary_value(COCYCLES[name], c).is_zero()


def test_psi_report(rieffel):
    e, _, _ = rieffel
    r = psi_chern_report(e)
    assert r.identity == hbar_theta(Fraction(-3, 10), -1)
    assert r.components[(1, -1)]["dtheta1"] == hbar_theta(Fraction(1, 2), 1)
    assert r.components[(-1, 1)]["dtheta1"] == hbar_theta(Fraction(-1, 2), 1)
    assert r.reproduces_pairings()
    assert r.to_json()["xi1"].startswith("unavailable")


def test_psi_report_zero_idempotent(rieffel):
    e, _, _ = rieffel
    r = psi_chern_report(e.zero_like())
    assert r.identity.is_zero()
    assert all(s.is_zero() for forms in r.components.values() for s in forms.values())


def test_matrix_pairing_adds(rieffel):
    e, _, _ = rieffel
    z = e.zero_like()
    E = MatrixCrossed([[e, z], [z, e]])
    assert index_pairing("xi3", E) == hbar_theta(2, 1)


def test_homotopy_invariance(rieffel):
    e, _, _ = rieffel
    base = {c: index_pairing(c, e) for c in COCYCLES}
    for h in random_homotopies(11, 3):
        assert h.check_continuity()
        ec = conjugate(e, h)
        assert not (ec - e).is_zero()
        for c, v in base.items():
            assert index_pairing(c, ec) == v
