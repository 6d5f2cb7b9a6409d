"""Hochschild/cyclic chains of the crossed product and the loop-space maps.

A :class:`Chain` is a formal sum of elementary tensors ``a0 (x) ... (x) ak``
with rational coefficients; ``b`` and ``B`` act term by term and products
are evaluated when the operator is applied.  Whether a chain vanishes is
decided by :func:`chain_is_zero`:

* Fourier mode: exact expansion in the basis ``e_k W^n`` of each slot.  In
  the normalized complex the unit ``e_0 W^0`` is dropped from slots >= 1.
* subalgebra mode: the tensor is sampled at fixed points of ``(S^1)^(k+1)``
  for every W-power and hbar order; in the normalized complex the slots
  >= 1 are projected off the unit by subtracting the mean of ``f_0``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from torusindex.crossed import CrossedElement, as_matrix
from torusindex.series import FormalLaurent


class Chain:
    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms=()):
        self.degree = degree
        merged = {}
        order = []
        for c, tensor in terms:
            if len(tensor) != degree + 1:
                raise ValueError(f"tensor of length {len(tensor)} in a degree-{degree} chain")
            if c == 0:
                continue
            key = tuple(id(a) for a in tensor)
            if key in merged:
                merged[key] = (merged[key][0] + c, tensor)
            else:
                merged[key] = (c, tensor)
                order.append(key)
        self.terms = [merged[k] for k in order if merged[k][0] != 0]

    @classmethod
    def elementary(cls, *tensor, coeff=1):
        return cls(len(tensor) - 1, [(coeff, tuple(tensor))])

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("adding chains of different degrees")
        return Chain(self.degree, self.terms + other.terms)

    def __neg__(self):
        return Chain(self.degree, [(-c, t) for c, t in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q):
        return Chain(self.degree, [(c * q, t) for c, t in self.terms])

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Chain(degree={self.degree}, terms={len(self.terms)})"


def hochschild_b(c):
    k = c.degree
    if k == 0:
        return Chain(-1, [])
    out = []
    for coeff, t in c.terms:
        for i in range(k):
            sign = -1 if i % 2 else 1
            out.append((sign * coeff, t[:i] + (t[i] * t[i + 1],) + t[i + 2:]))
        sign = -1 if k % 2 else 1
        out.append((sign * coeff, (t[k] * t[0],) + t[1:k]))
    return Chain(k - 1, out)


def connes_B(c):
    """Normalized coboundary ``sum_i (-1)^(k i) 1 (x) a_i ... a_k (x) a_0 ... a_(i-1)``."""
    k = c.degree
    out = []
    for coeff, t in c.terms:
        one = t[0].one_like()
        for i in range(k + 1):
            sign = -1 if (k * i) % 2 else 1
            out.append((sign * coeff, (one,) + t[i:] + t[:i]))
    return Chain(k + 1, out)


# --------------------------------------------------------------------------
# zero tests


def _fourier_basis(F):
    out = []
    for n, f in F.terms.items():
        for k, s in f.coeffs.items():
            out.append(((n, k[0], k[1]), s))
    return out


_UNIT_KEY = (0, 0, 0)


def _fourier_expand(chain, normalized):
    acc = {}
    for coeff, t in chain.terms:
        bases = [_fourier_basis(a) for a in t]
        if normalized:
            bases = [bases[0]] + [[(key, s) for key, s in b if key != _UNIT_KEY] for b in bases[1:]]
        for combo in itertools.product(*bases):
            key = tuple(kk for kk, _ in combo)
            s = combo[0][1]
            for _, s2 in combo[1:]:
                s = s * s2
            s = s * Fraction(coeff)
            acc[key] = acc[key] + s if key in acc else s
    return acc


SAMPLE_POINTS = (0.0731, 0.2389, 0.4172, 0.5957, 0.8123)


def _pw_slot_values(a, xs, project):
    """{n: array (orders, len(xs))}, unit-projected at n = 0 if requested."""
    out = {}
    for n, f in a.terms.items():
        vals = f.sample(xs)
        if project and n == 0:
            for order, fn in f.coeffs.items():
                if 0 <= order <= f.trunc:
                    vals[order] -= float(fn.integrate())
        out[n] = vals
    return out


def _pw_tensor(coeff, t, xs, normalized, trunc):
    state = {(): np.zeros((trunc + 1, 1))}
    state[()][0, 0] = float(coeff)
    for pos, a in enumerate(t):
        vals = _pw_slot_values(a, xs, normalized and pos >= 1)
        new = {}
        for key, arr in state.items():
            for n, v in vals.items():
                # total-order convolution of arr (orders, P) with v (orders, X)
                prod = np.zeros((trunc + 1, arr.shape[1] * v.shape[1]))
                for i in range(trunc + 1):
                    if not arr[i].any():
                        continue
                    for j in range(trunc + 1 - i):
                        if v[j].any():
                            prod[i + j] += np.outer(arr[i], v[j]).ravel()
                new[key + (n,)] = prod
        state = new
    return state


def _pw_zero(chain, normalized, tol, xs):
    trunc = min(a.template.trunc for _, t in chain.terms for a in t)
    acc = {}
    scale = 0.0
    for coeff, t in chain.terms:
        for key, arr in _pw_tensor(coeff, t, xs, normalized, trunc).items():
            scale = max(scale, float(np.max(np.abs(arr))) if arr.size else 0.0)
            acc[key] = acc[key] + arr if key in acc else arr
    worst = max((float(np.max(np.abs(a))) for a in acc.values() if a.size), default=0.0)
    return worst <= tol * max(1.0, scale), worst


def chain_is_zero(chain, normalized=True, tol=1e-9, points=SAMPLE_POINTS):
    """Exact (Fourier) or sampled (subalgebra) test; returns (bool, residual)."""
    if not chain.terms:
        return True, 0
    kind = chain.terms[0][1][0].kind
    if kind == "fourier":
        acc = _fourier_expand(chain, normalized)
        bad = {k: s for k, s in acc.items() if not s.is_zero()}
        return not bad, bad
    return _pw_zero(chain, normalized, tol, np.asarray(points))


def chains_equal(c1, c2, normalized=True, **kw):
    return chain_is_zero(c1 - c2, normalized, **kw)[0]


# --------------------------------------------------------------------------
# Chern character


def chern_coefficient(i):
    """``(-1)^i (2i)! / i!``."""
    return (-1) ** i * math.factorial(2 * i) // math.factorial(i)


def _traced(entries, size, length):
    """All index cycles ``(i0, i1, ..., i_{L-1}, i0)`` of a size x size matrix."""
    for idx in itertools.product(range(size), repeat=length):
        yield tuple(entries[p][idx[p], idx[(p + 1) % length]] for p in range(length))


def chern(E, k):
    """``[c_0, ..., c_k]`` with ``c_0 = tr e`` and
    ``c_i = (-1)^i (2i)!/i! tr((e - 1/2) (x) e^(x 2i))``, matrix trace expanded."""
    E = as_matrix(E)
    size = E.size
    one = E[0, 0].one_like()
    half = _shift_half(E, one)
    chains = [Chain(0, [(1, (E[i, i],)) for i in range(size)])]
    for i in range(1, k + 1):
        mats = [half] + [E] * (2 * i)
        terms = [(chern_coefficient(i), t) for t in _traced(mats, size, 2 * i + 1)]
        chains.append(Chain(2 * i, terms))
    return chains


def _shift_half(E, one):
    from torusindex.crossed import MatrixCrossed
    rows = []
    for i in range(E.size):
        row = []
        for j in range(E.size):
            row.append(E[i, j] - one.scale(Fraction(1, 2)) if i == j else E[i, j])
        rows.append(row)
    return MatrixCrossed(rows)


def chern_cycle_residuals(chs):
    """``b c_i + B c_(i-1)`` for ``i >= 1`` (all must vanish for a (b, B)-cycle)."""
    return [hochschild_b(chs[i]) + connes_B(chs[i - 1]) for i in range(1, len(chs))]


# --------------------------------------------------------------------------
# Burghelea tuples


@dataclass(frozen=True)
class BurgheleaTuple:
    """``(n_0, ..., n_k)`` with zero sum: a component of B_k for the free Z-action."""

    n: tuple

    def __post_init__(self):
        if sum(self.n) != 0:
            raise ValueError(f"Burghelea tuple {self.n} must sum to zero")

    @property
    def k(self):
        return len(self.n) - 1

    def face(self, i):
        return burghelea_face(self, i)

    def cyclic(self):
        return burghelea_cyclic(self)

    def degeneracy(self, j):
        return burghelea_degeneracy(self, j)


def burghelea_face(t, i):
    n, k = t.n, t.k
    if not 0 <= i <= k or k == 0:
        raise IndexError(f"face index {i} out of range for a {k}-simplex")
    if i < k:
        return BurgheleaTuple(n[:i] + (n[i] + n[i + 1],) + n[i + 2:])
    return BurgheleaTuple((n[k] + n[0],) + n[1:k])


def burghelea_cyclic(t):
    n = t.n
    return BurgheleaTuple((n[-1],) + n[:-1])


def burghelea_degeneracy(t, j):
    n, k = t.n, t.k
    if not 0 <= j <= k:
        raise IndexError(f"degeneracy index {j} out of range for a {k}-simplex")
    return BurgheleaTuple(n[:j + 1] + (0,) + n[j + 1:])


def simplicial_identities(t):
    """Check the cyclic-set relations at one tuple; returns {relation: bool}."""
    k = t.k
    d, s, c = burghelea_face, burghelea_degeneracy, burghelea_cyclic
    ok = {"faces": True, "degeneracies": True, "mixed": True, "cyclic": True}
    if k >= 2:
        for j in range(k + 1):
            for i in range(j):
                ok["faces"] &= d(d(t, j), i) == d(d(t, i), j - 1)
    for j in range(k + 1):
        for i in range(j + 1):
            ok["degeneracies"] &= s(s(t, j), i) == s(s(t, i), j + 1)
        ok["mixed"] &= d(s(t, j), j) == t and d(s(t, j), j + 1) == t
        for i in range(j):
            if k >= 1:
                ok["mixed"] &= d(s(t, j), i) == s(d(t, i), j - 1)
        for i in range(j + 2, k + 2):
            if k >= 1:
                ok["mixed"] &= d(s(t, j), i) == s(d(t, i - 1), j)
    r = t
    for _ in range(k + 1):
        r = c(r)
    ok["cyclic"] &= r == t
    if k >= 1:
        ok["cyclic"] &= d(c(t), 0) == d(t, k)
        for i in range(1, k + 1):
            ok["cyclic"] &= d(c(t), i) == c(d(t, i - 1))
    ok["cyclic"] &= s(c(t), 0) == c(c(s(t, k)))
    for i in range(1, k + 1):
        ok["cyclic"] &= s(c(t), i) == c(s(t, i - 1))
    return ok


def random_tuple(rng, k, span=4):
    ns = [rng.randint(-span, span) for _ in range(k)]
    return BurgheleaTuple(tuple(ns + [-sum(ns)]))


# --------------------------------------------------------------------------
# restriction to loops and the Alexander-Whitney regrouping


def _stalk_zero(template):
    return CrossedElement({}, template)


def restrict_to_loops(c):
    """{BurgheleaTuple: Chain of W^0 stalks}.

    The component of ``f_0 W^n0 (x) ... (x) f_k W^nk`` with zero sum is the
    stalk tensor ``phi_0 (x) ... (x) phi_k`` with ``phi_i = T_(n_0+...+n_(i-1)) f_i``.
    """
    out = {}
    for coeff, t in c.terms:
        supports = [a.items() for a in t]
        for combo in itertools.product(*supports):
            ns = tuple(n for n, _ in combo)
            if sum(ns) != 0:
                continue
            stalks = []
            s = 0
            for n, f in combo:
                stalks.append(CrossedElement.monomial(f.translate(s)))
                s += n
            out.setdefault(BurgheleaTuple(ns), []).append((coeff, tuple(stalks)))
    return {key: Chain(c.degree, terms) for key, terms in out.items()}


def _transport(chain, m):
    if m == 0:
        return chain
    return Chain(chain.degree, [(c, tuple(CrossedElement.monomial(a[0].translate(m)) for a in t))
                                for c, t in chain.terms])


def _stalk_faces(chain, i):
    """The i-th Hochschild face of a stalk chain (untwisted: the loops are trivial)."""
    k = chain.degree
    out = []
    for c, t in chain.terms:
        if i < k:
            out.append((c, t[:i] + (t[i] * t[i + 1],) + t[i + 2:]))
        else:
            out.append((c, (t[k] * t[0],) + t[1:k]))
    return Chain(k - 1, out)


def _accumulate(target, key, chain):
    if key in target:
        target[key] = target[key] + chain
    else:
        target[key] = chain


def loop_b(loops):
    """Hochschild boundary on the loop-space model: diagonal faces with transport."""
    out = {}
    for tup, chain in loops.items():
        k = tup.k
        for i in range(k + 1):
            face = _stalk_faces(chain, i)
            if i == k:
                face = _transport(face, tup.n[k])
            sign = -1 if i % 2 else 1
            _accumulate(out, burghelea_face(tup, i), face.scale(sign))
    return out


def loops_equal(x, y, normalized=False):
    keys = set(x) | set(y)
    for key in keys:
        a = x.get(key)
        b = y.get(key)
        if a is None:
            a = Chain(b.degree, [])
        if b is None:
            b = Chain(a.degree, [])
        if not chain_is_zero(a - b, normalized)[0]:
            return False
    return True


def aw_psi0(loops):
    """Alexander-Whitney regrouping into bidegrees (q, p), q + p = k.

    For the tuple ``(t_0..t_k)`` and stalks ``phi_0..phi_k`` the (q, p) part
    sits over the group tuple ``(t_(q+1)+...+t_k+t_0, t_1, ..., t_q)`` with
    stalk tensor ``phi_0...phi_q (x) phi_(q+1) (x) ... (x) phi_k``, transported
    by ``T_(t_(q+1)+...+t_k)``.  Returns {(q, p, BurgheleaTuple): Chain}.
    """
    out = {}
    for tup, chain in loops.items():
        t = tup.n
        k = tup.k
        for q in range(k + 1):
            tail = sum(t[q + 1:])
            group = BurgheleaTuple((tail + t[0],) + t[1:q + 1])
            terms = []
            for c, st in chain.terms:
                front = st[0]
                for a in st[1:q + 1]:
                    front = front * a
                terms.append((c, (front,) + st[q + 1:]))
            stalk = _transport(Chain(k - q, terms), tail)
            _accumulate(out, (q, k - q, group), stalk)
    return out


def bisimplicial_total_d(bi, vertical_sign=lambda q, p: (-1) ** q):
    """``d^h + sign(q, p) d^v`` on {(q, p, tuple): stalk Chain}."""
    out = {}
    for (q, p, tup), chain in bi.items():
        if q > 0:
            for i in range(q + 1):
                face = chain if i < q else _transport(chain, tup.n[q])
                sign = -1 if i % 2 else 1
                _accumulate(out, (q - 1, p, burghelea_face(tup, i)), face.scale(sign))
        if p > 0:
            vb = hochschild_b(chain).scale(vertical_sign(q, p))
            _accumulate(out, (q, p - 1, tup), vb)
    return out


def bisimplicial_equal(x, y, normalized=False):
    return loops_equal(x, y, normalized)


__all__ = [
    "Chain", "hochschild_b", "connes_B", "chain_is_zero", "chains_equal", "chern",
    "chern_coefficient", "chern_cycle_residuals", "BurgheleaTuple", "burghelea_face",
    "burghelea_cyclic", "burghelea_degeneracy", "simplicial_identities", "random_tuple", "restrict_to_loops", "loop_b", "loops_equal",
    "aw_psi0", "bisimplicial_total_d", "bisimplicial_equal",
]
