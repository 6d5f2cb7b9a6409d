from fractions import Fraction

import pytest

from torusindex.cocycles import conjugate, random_periodic_function
from torusindex.crossed import CrossedElement, MatrixCrossed, unit_fourier
from torusindex.cyclic import (
    BurgheleaTuple, Chain, aw_psi0, bisimplicial_equal, bisimplicial_total_d, burghelea_cyclic,
    burghelea_face, chain_is_zero, chern, chern_coefficient, chern_cycle_residuals, connes_B,
    hochschild_b, loop_b, loops_equal, random_tuple, restrict_to_loops, simplicial_identities,
)
from torusindex.fedosov import random_fourier
from torusindex.fourier import FourierPoly


def rand_elem(rng):
    return CrossedElement({rng.randint(-1, 1): random_fourier(rng, 1, 6, count=2)
                           for _ in range(2)}, FourierPoly({}))


def rand_chain(rng, deg):
    return Chain.elementary(*(rand_elem(rng) for _ in range(deg + 1)))


@pytest.mark.parametrize("deg", [1, 2, 3])
def test_mixed_complex_identities(rng, deg):
    c = rand_chain(rng, deg)
    assert chain_is_zero(hochschild_b(hochschild_b(c)), normalized=False)[0]
    assert chain_is_zero(connes_B(connes_B(c)))[0]
    assert chain_is_zero(hochschild_b(connes_B(c)) + connes_B(hochschild_b(c)))[0]


def test_zero_test_detects_nonzero(rng):
    c = rand_chain(rng, 1)
    ok, bad = chain_is_zero(c)
    assert not ok and bad


def test_chern_coefficients():
    assert [chern_coefficient(i) for i in range(4)] == [1, -2, 12, -120]


def test_chern_cycles(rieffel, rng):
    e, _, _ = rieffel
    for E in (unit_fourier(), e, conjugate(e, random_periodic_function(rng))):
        assert all(chain_is_zero(r)[0] for r in chern_cycle_residuals(chern(E, 2)))


def test_chern_cycle_fails_for_non_idempotent(rieffel):
    e, _, _ = rieffel
    bad = e.scale(Fraction(1, 2))
    assert not all(chain_is_zero(r)[0] for r in chern_cycle_residuals(chern(bad, 1)))


def test_chern_of_matrix(rieffel):
    e, _, _ = rieffel
    z = e.zero_like()
    E = MatrixCrossed([[e, z], [z, e.one_like()]])
    chs = chern(E, 1)
    assert len(chs[1]) == 2 ** 3
    assert all(chain_is_zero(r)[0] for r in chern_cycle_residuals(chs))


def test_burghelea_examples():
    t = BurgheleaTuple((1, -1))
    assert burghelea_face(t, 0).n == (0,)
    assert burghelea_face(t, 1).n == (0,)
    assert burghelea_cyclic(BurgheleaTuple((1, 2, -3))).n == (-3, 1, 2)
    with pytest.raises(ValueError):
        BurgheleaTuple((1, 1))


def test_cyclic_set_identities(rng):
    for _ in range(100):
        t = random_tuple(rng, rng.randint(0, 4))
        assert all(simplicial_identities(t).values())


@pytest.mark.parametrize("deg", [1, 2, 3])
def test_restriction_commutes_with_b(rng, deg):
    c = rand_chain(rng, deg)
    assert loops_equal(restrict_to_loops(hochschild_b(c)), loop_b(restrict_to_loops(c)))


@pytest.mark.parametrize("deg", [1, 2, 3])
def test_alexander_whitney_is_chain_map(rng, deg):
    c = rand_chain(rng, deg)
    loops = restrict_to_loops(c)
    lhs = aw_psi0(loop_b(loops))
    rhs = bisimplicial_total_d(aw_psi0(loops))
    assert bisimplicial_equal(lhs, rhs)


def test_alexander_whitney_sign_is_pinned(rng):
    c = rand_chain(rng, 2)
    loops = restrict_to_loops(c)
    wrong = bisimplicial_total_d(aw_psi0(loops), vertical_sign=lambda q, p: (-1) ** (q + 1))
    assert not bisimplicial_equal(aw_psi0(loop_b(loops)), wrong)
