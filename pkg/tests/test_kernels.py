import random

import pytest

from torusindex import _kernels_py as py
from torusindex import kernels

cy = pytest.importorskip("torusindex._kernels")


def _rand_poly(rng, n=6):
    out = {}
    for _ in range(n):
        exps = tuple(rng.randint(-3, 3) for _ in range(4))
        out[py.pack(exps)] = (rng.randint(-9, 9), rng.randint(-9, 9))
    return {k: v for k, v in out.items() if v != (0, 0)}


def test_pack_roundtrip():
    for exps in [(0, 0, 0, 0), (1, -2, 3, -4), (100, -100, 7, 0)]:
        assert py.unpack(py.pack(exps)) == exps
        assert cy.unpack(cy.pack(exps)) == exps


def test_pack_overflow():
    with pytest.raises(OverflowError):
        py.pack((1 << 15, 0, 0, 0))


def test_backends_agree_on_mul_add():
    rng = random.Random(1)
    for _ in range(50):
        a, b = _rand_poly(rng), _rand_poly(rng)
        assert cy.mul(a, b) == py.mul(a, b)
        assert cy.add(a, b, 2, -3) == py.add(a, b, 2, -3)
        assert cy.scale(a, 5, -1) == py.scale(a, 5, -1)


def test_mul_commutative_and_unit():
    rng = random.Random(2)
    one = {py.KEY_OFFSET: (1, 0)}
    a, b = _rand_poly(rng), _rand_poly(rng)
    assert py.mul(a, b) == py.mul(b, a)
    assert py.mul(a, one) == a


def test_selected_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
