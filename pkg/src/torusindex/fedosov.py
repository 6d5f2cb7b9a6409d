"""Flat Fedosov quantization on the torus.

Sections of the Weyl bundle are finite sums of terms

    c * hbar^n * y1^a * y2^b * e_k

stored sparsely as ``{(a, b, k1, k2, n): scalar}``.  The Fedosov degree of a
term is ``2n + a + b``; every section carries a ``cap`` and only terms up to
that degree are meaningful.  The fiberwise product is the Moyal product in
``y`` with bivector ``theta``:

    s o t = exp(-(i hbar / 2) theta (d_y1 (x) d_y2 - d_y2 (x) d_y1)) s (x) t |diag,

and it adds Fedosov degrees.  The flat connection is

    D = dx^j ^ (d/dx^j - d/dy^j) = d + (i / hbar) [A, -],
    A = -(1/theta) (y1 dx^2 - y2 dx^1).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from torusindex.fourier import FourierPoly
from torusindex.scalar import EXACT
from torusindex.series import DEFAULT_ORDER, FormalLaurent


class CapError(ValueError):
    """The Fedosov-degree cap is too small for the requested accuracy."""


def default_cap(order):
    return 2 * order + 4


def _ff(n, r):
    """Falling factorial n (n-1) ... (n-r+1)."""
    out = 1
    for j in range(r):
        out *= n - j
    return out


class WeylSection:
    __slots__ = ("field", "terms", "cap")

    def __init__(self, terms=None, field=EXACT, cap=default_cap(DEFAULT_ORDER)):
        self.field = field
        self.cap = cap
        clean = {}
        for key, c in (terms or {}).items():
            a, b, _, _, n = key
            if 2 * n + a + b > cap:
                continue
            c = field.coerce(c)
            if not c.is_zero():
                clean[key] = c
        self.terms = clean

    # constructors ----------------------------------------------------------
    @classmethod
    def from_fourier(cls, f, cap):
        terms = {}
        for k, series in f.coeffs.items():
            for n, c in series.coeffs.items():
                terms[(0, 0, k[0], k[1], n)] = c
        return cls(terms, f.field, cap)

    @classmethod
    def y(cls, i, field=EXACT, cap=default_cap(DEFAULT_ORDER)):
        return cls({(1, 0, 0, 0, 0) if i == 1 else (0, 1, 0, 0, 0): 1}, field, cap)

    @classmethod
    def one(cls, field=EXACT, cap=default_cap(DEFAULT_ORDER)):
        return cls({(0, 0, 0, 0, 0): 1}, field, cap)

    def _new(self, terms, cap=None):
        return WeylSection(terms, self.field, self.cap if cap is None else cap)

    # linear ------------------------------------------------------------------
    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return self._new(out, min(self.cap, other.cap))

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = self.field.coerce(s)
        return self._new({k: c * s for k, c in self.terms.items()})

    def shift_hbar(self, d):
        """Multiply by ``hbar**d``; the cap moves by ``2d``."""
        return self._new({(a, b, k1, k2, n + d): c for (a, b, k1, k2, n), c in self.terms.items()},
                         self.cap + 2 * d)

    def is_zero(self):
        return not self.terms

    def truncated(self, cap):
        return self._new(self.terms, min(cap, self.cap))

    def __eq__(self, other):
        if not isinstance(other, WeylSection):
            return NotImplemented
        cap = min(self.cap, other.cap)
        return (self.truncated(cap) - other.truncated(cap)).is_zero()

    __hash__ = None

    # calculus ------------------------------------------------------------------
    def deriv_y(self, i):
        out = {}
        for (a, b, k1, k2, n), c in self.terms.items():
            if i == 1 and a:
                out[(a - 1, b, k1, k2, n)] = c * a
            elif i == 2 and b:
                out[(a, b - 1, k1, k2, n)] = c * b
        return self._new(out, self.cap - 1)

    def deriv_x(self, i):
        twopii = self.field.monomial(2, pi=1) * self.field.i
        out = {}
        for key, c in self.terms.items():
            k = key[2] if i == 1 else key[3]
            if k:
                out[key] = c * twopii * k
        return self._new(out)

    def symbol(self):
        """Restriction to ``y = 0`` as a FourierPoly."""
        trunc = self.cap // 2
        modes = {}
        for (a, b, k1, k2, n), c in self.terms.items():
            if a == 0 and b == 0:
                modes.setdefault((k1, k2), {})[n] = c
        return FourierPoly({k: FormalLaurent(self.field, v, trunc) for k, v in modes.items()},
                           self.field, trunc)

    def __repr__(self):
        return f"WeylSection({len(self.terms)} terms, cap={self.cap})"


_MOYAL_CONST = {}


def _moyal_const(field, M):
    """``(-i/2)^M theta^M / M!`` in the given field."""
    key = (field, M)
    hit = _MOYAL_CONST.get(key)
    if hit is None:
        hit = (field.i * field.const(Fraction(-1, 2)) * field.theta) ** M
        hit = hit * field.const(Fraction(1, factorial(M)))
        _MOYAL_CONST[key] = hit
    return hit


def weyl_product(s, t, cap=None):
    """Fiberwise Moyal product; Fedosov degrees add, terms above ``cap`` are dropped."""
    field = s.field
    cap = min(s.cap, t.cap) if cap is None else cap
    out = {}
    for (a, b, k1, k2, n), cs in s.terms.items():
        ds = 2 * n + a + b
        for (c, d, l1, l2, m), ct in t.terms.items():
            if ds + 2 * m + c + d > cap:
                continue
            base = cs * ct
            for M in range(0, min(a + b, c + d) + 1):
                for r in range(0, M + 1):
                    if r > a or M - r > b or M - r > c or r > d:
                        continue
                    num = comb(M, r) * _ff(a, r) * _ff(b, M - r) * _ff(c, M - r) * _ff(d, r)
                    if (M - r) % 2:
                        num = -num
                    coeff = base * _moyal_const(field, M) * num
                    key = (a + c - M, b + d - M, k1 + l1, k2 + l2, n + m + M)
                    out[key] = out[key] + coeff if key in out else coeff
    return WeylSection(out, field, cap)


# --------------------------------------------------------------------------
# forms

FORM_BASIS = ((), (1,), (2,), (1, 2))


def _wedge(I, J):
    """``dx^I ^ dx^J = sign * dx^K``; returns (sign, K) or (0, None)."""
    idx = list(I) + list(J)
    if len(set(idx)) < len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


class WeylFormSection:
    """``sum_I s_I dx^I`` with coefficients written on the left."""

    __slots__ = ("comps", "field")

    def __init__(self, comps, field=EXACT):
        self.field = field
        self.comps = {I: s for I, s in comps.items() if not s.is_zero()}

    @property
    def cap(self):
        return min((s.cap for s in self.comps.values()), default=10 ** 6)

    @classmethod
    def scalar(cls, s):
        return cls({(): s}, s.field)

    def __getitem__(self, I):
        return self.comps.get(I, WeylSection({}, self.field, self.cap))

    def degree(self):
        degs = {len(I) for I in self.comps}
        if len(degs) > 1:
            raise ValueError("inhomogeneous form")
        return degs.pop() if degs else 0

    def __add__(self, other):
        out = dict(self.comps)
        for I, s in other.comps.items():
            out[I] = out[I] + s if I in out else s
        return WeylFormSection(out, self.field)

    def __neg__(self):
        return WeylFormSection({I: -s for I, s in self.comps.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return WeylFormSection({I: s.scale(c) for I, s in self.comps.items()}, self.field)

    def product(self, other, cap=None):
        out = {}
        for I, s in self.comps.items():
            for J, t in other.comps.items():
                sign, K = _wedge(I, J)
                if not sign:
                    continue
                st = weyl_product(s, t, cap)
                if sign < 0:
                    st = -st
                out[K] = out[K] + st if K in out else st
        return WeylFormSection(out, self.field)

    def is_zero(self):
        return all(s.is_zero() for s in self.comps.values())

    def truncated(self, cap):
        return WeylFormSection({I: s.truncated(cap) for I, s in self.comps.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, WeylFormSection):
            return NotImplemented
        cap = min(self.cap, other.cap)
        return (self.truncated(cap) - other.truncated(cap)).is_zero()

    __hash__ = None


def _prepend(j, I, s, out):
    sign, K = _wedge((j,), I)
    if sign:
        s = s if sign > 0 else -s
        out[K] = out[K] + s if K in out else s


def fedosov_D(form):
    """``D = dx^j ^ (d/dx^j - d/dy^j)``; the result is valid up to ``cap - 1``."""
    if isinstance(form, WeylSection):
        form = WeylFormSection.scalar(form)
    out = {}
    for I, s in form.comps.items():
        for j in (1, 2):
            L = s.deriv_x(j).truncated(s.cap - 1) - s.deriv_y(j)
            _prepend(j, I, L, out)
    return WeylFormSection(out, form.field)


def connection_form(field=EXACT, cap=default_cap(DEFAULT_ORDER)):
    """``A = -(1/theta)(y1 dx^2 - y2 dx^1)`` as a WeylFormSection."""
    inv = field.theta.inverse()
    return WeylFormSection({
        (1,): WeylSection.y(2, field, cap).scale(inv),
        (2,): WeylSection.y(1, field, cap).scale(-inv),
    }, field)


def fedosov_D_commutator(form):
    """``d + (i/hbar)[A, -]`` with the graded commutator; valid up to ``cap - 1``."""
    if isinstance(form, WeylSection):
        form = WeylFormSection.scalar(form)
    field = form.field
    out = {}
    A = connection_form(field, form.cap + 1)
    ifac = field.i
    for I, s in form.comps.items():
        for j in (1, 2):
            _prepend(j, I, s.deriv_x(j).truncated(s.cap - 1), out)
        wide = WeylSection(s.terms, field, s.cap + 1)
        for (j,), a in A.comps.items():
            comm = weyl_product(a, wide, s.cap + 1) - weyl_product(wide, a, s.cap + 1)
            comm = comm.shift_hbar(-1).scale(ifac)
            _prepend(j, I, comm, out)
    return WeylFormSection(out, field)


def quantize(f, cap=None):
    """The D-flat section with symbol ``f``: ``e_k (x) exp(2 pi i k.y)`` expanded to the cap."""
    field = f.field
    cap = default_cap(f.trunc) if cap is None else cap
    twopii = field.monomial(2, pi=1) * field.i
    terms = {}
    for k, series in f.coeffs.items():
        for n, c in series.coeffs.items():
            top = cap - 2 * n
            for a in range(top + 1):
                ca = (twopii * k[0]) ** a * field.const(_inv_fact(a)) if a else field.one
                if k[0] == 0 and a:
                    break
                for b in range(top - a + 1):
                    if k[1] == 0 and b:
                        break
                    cb = (twopii * k[1]) ** b * field.const(_inv_fact(b)) if b else field.one
                    terms[(a, b, k[0], k[1], n)] = c * ca * cb
    return WeylSection(terms, field, cap)


def _inv_fact(n):
    return Fraction(1, factorial(n))


def symbol(s):
    return s.symbol()


def star_via_fedosov(f, g, order=None, cap=None):
    """``sigma(q(f) o q(g))`` up to hbar^order.

    Only the y-degree-zero part of the product is assembled: a term pairs the
    ``(r, M-r)`` y-derivative of ``q(f)`` with the ``(M-r, r)`` one of ``q(g)``.
    """
    order = min(f.trunc, g.trunc) if order is None else order
    cap = default_cap(order) if cap is None else cap
    if cap < 2 * order:
        raise CapError(f"cap {cap} cannot resolve hbar^{order} symbols (need >= {2 * order})")
    field = f.field
    qf, qg = quantize(f, cap), quantize(g, cap)
    byk_f, byk_g = _by_mode(qf), _by_mode(qg)
    out = {}
    for k, tf in byk_f.items():
        for l, tg in byk_g.items():
            acc = {}
            for (a, b, n), cf in tf.items():
                for (c, d, m), cg in tg.items():
                    M = a + b
                    if c + d != M or n + m + M > order:
                        continue
                    r = a
                    if d != r or c != M - r:
                        continue
                    num = comb(M, r) * factorial(a) * factorial(b) * factorial(c) * factorial(d)
                    if (M - r) % 2:
                        num = -num
                    val = cf * cg * _moyal_const(field, M) * num
                    acc[n + m + M] = acc[n + m + M] + val if n + m + M in acc else val
            kl = (k[0] + l[0], k[1] + l[1])
            s = FormalLaurent(field, acc, order)
            out[kl] = out[kl] + s if kl in out else s
    return FourierPoly(out, field, order)


def _by_mode(s):
    out = {}
    for (a, b, k1, k2, n), c in s.terms.items():
        out.setdefault((k1, k2), {})[(a, b, n)] = c
    return out


def random_fourier(rng, K, order=DEFAULT_ORDER, count=None, field=EXACT):
    """Random rational combination of modes in the box ``|k_i| <= K``."""
    from fractions import Fraction as Fr
    box = [(a, b) for a in range(-K, K + 1) for b in range(-K, K + 1)]
    chosen = box if count is None else rng.sample(box, min(count, len(box)))
    return FourierPoly({k: Fr(rng.randint(-6, 6), rng.randint(1, 4)) for k in chosen},
                       field, order)


def random_section(rng, cap, size=5):
    terms = {}
    for _ in range(size):
        key = (rng.randint(0, 3), rng.randint(0, 3), rng.randint(-1, 1), rng.randint(-1, 1),
               rng.randint(0, 2))
        terms[key] = rng.randint(-3, 3)
    return WeylSection(terms, cap=cap)


def check_suite(K=2, order=DEFAULT_ORDER, seed=0, pairs=2):
    """Agreement with the closed Moyal formula plus flatness checks; returns {name: bool}."""
    import random
    from torusindex.fourier import moyal_star

    rng = random.Random(seed)
    out = {"agreement": True, "flat_quantization": True, "D_squared_zero": True,
           "D_matches_commutator_form": True, "symbol_roundtrip": True}
    cap = default_cap(order)
    for _ in range(pairs):
        f, g = random_fourier(rng, K, order), random_fourier(rng, K, order)
        out["agreement"] &= star_via_fedosov(f, g, order) == moyal_star(f, g)
        small = random_fourier(rng, 1, order, count=3)
        q = quantize(small, 8)
        out["flat_quantization"] &= fedosov_D(q).is_zero()
        out["symbol_roundtrip"] &= q.symbol() == small.__class__(
            {k: c.truncate(4) for k, c in small.coeffs.items()}, small.field, 4)
        F = WeylFormSection({(): random_section(rng, 8), (1,): random_section(rng, 8),
                             (2,): random_section(rng, 8)})
        out["D_squared_zero"] &= fedosov_D(fedosov_D(F)).is_zero()
        out["D_matches_commutator_form"] &= fedosov_D(F) == fedosov_D_commutator(F)
    out["cap"] = cap
    return out


CHARACTERISTIC_CLASS = "-(1/theta) dx^1 ^ dx^2 (recorded, not computed)"


__all__ = [
    "WeylSection", "WeylFormSection", "weyl_product", "fedosov_D", "fedosov_D_commutator",
    "connection_form", "quantize", "symbol", "star_via_fedosov", "CapError", "default_cap",
    "FORM_BASIS", "CHARACTERISTIC_CLASS", "check_suite", "random_fourier", "random_section",
]
