import pytest

from torusindex.cohomology import (
    DeRhamForm, boundary, cohomology_dims, de_rham_d, exact_rank, gamma_action,
    homology_boundary_check, honest_h0, periodic_dims, random_chain, random_form, rank_oracle,
    resonance_warnings, total_d_squared_zero,
)
from torusindex.fourier import FourierPoly
from torusindex.scalar import EXACT, NumericField


@pytest.mark.parametrize("K", [1, 2, 4])
def test_dims(K):
    h = cohomology_dims(K)
    assert h == [1, 3, 3, 1]
    assert periodic_dims(dims=h) == [4, 4]


@pytest.mark.parametrize("seed", [0, 1])
def test_rank_oracle_agrees(seed):
    assert rank_oracle(2, seed) == cohomology_dims(2)


def test_identity_action_fixture():
    fixture = rank_oracle(2, 5, identity_action=True)
    assert cohomology_dims(2, identity_action=True) == fixture
    assert periodic_dims(2, identity_action=True) == [fixture[0] + fixture[2], fixture[1] + fixture[3]]


def test_total_differential_squares_to_zero():
    assert total_d_squared_zero(2)


def test_honest_h0_matches():
    for K in (1, 2):
        assert honest_h0(K) == cohomology_dims(K)[0]


def test_exact_rank_generic_entries():
    one, u = EXACT.one, EXACT.u
    assert exact_rank([[one - u, one], [one - u * u, one + u]]) == 1
    assert exact_rank([[one - u, one], [one, one - u]]) == 2


def test_d_examples(rng):
    assert de_rham_d(DeRhamForm({(): FourierPoly.constant(1)})).is_zero()
    d = de_rham_d(DeRhamForm({(): FourierPoly.mode((1, 0))}))
    assert d[(1,)][(1, 0)][0] == EXACT.monomial(2, pi=1) * EXACT.i
    for _ in range(5):
        x = random_form(rng)
        assert de_rham_d(de_rham_d(x)).is_zero()
        assert de_rham_d(gamma_action(x)) == gamma_action(de_rham_d(x))


def test_gamma_examples():
    c = DeRhamForm({(): FourierPoly.constant(3)})
    assert gamma_action(c) == c
    x = DeRhamForm({(2,): FourierPoly.mode((1, 0))})
    assert gamma_action(x)[(2,)][(1, 0)][0] == EXACT.u


def test_boundary_single_tuple():
    x = DeRhamForm({(): FourierPoly.mode((1, 0))})
    out = boundary({(1, -1): x})
    assert list(out) == [(0,)]
    assert out[(0,)] == x - x.translate(-1)


def test_boundary_checks(rng):
    for q in (1, 2):
        res = homology_boundary_check(random_chain(rng, q))
        assert all(res.values())


def test_numeric_backend_and_warnings():
    F = NumericField(1.0, 0.3)
    assert cohomology_dims(2, F) == [1, 3, 3, 1]
    assert resonance_warnings(2, F) == []
    assert resonance_warnings(1, NumericField(1.0, 0.3, 0.7))
    assert resonance_warnings(1, EXACT) == []


def test_cutoff_validated():
    with pytest.raises(ValueError):
        cohomology_dims(0)
