"""Fourier polynomials on T^2 with the Moyal product.

``FourierPoly`` stores ``sum_k c_k e_k`` with ``e_k(x) = exp(2 pi i k.x)`` and
``c_k`` a :class:`FormalLaurent`.  The Moyal product uses the closed phase

    e_k * e_l = exp(2 pi^2 i hbar theta (k1 l2 - k2 l1)) e_{k+l}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from torusindex.scalar import EXACT
from torusindex.series import DEFAULT_FLOOR, DEFAULT_ORDER, FormalLaurent


@dataclass(frozen=True)
class TorusPoissonData:
    """Constant Poisson bivector ``theta d1 ^ d2``; ``int dx1 dx2 = +1``."""

    field: object = EXACT
    theta: object = dc_field(default=None)
    orientation: int = 1

    def theta_scalar(self):
        th = self.field.theta if self.theta is None else self.field.coerce(self.theta)
        if th.is_zero():
            raise ValueError("theta must be invertible")
        return th


_PHASES = {}


def _phase(field, theta, w, trunc, floor):
    key = (field, str(theta), w, trunc, floor)
    hit = _PHASES.get(key)
    if hit is None:
        c = field.monomial(2, pi=2) * field.i * theta * w
        hit = _PHASES[key] = FormalLaurent.exp_linear(c, field, trunc, floor)
    return hit


def wedge(k, l):
    return k[0] * l[1] - k[1] * l[0]


class FourierPoly:
    __slots__ = ("field", "coeffs", "trunc", "floor")

    def __init__(self, coeffs=None, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        self.field = field
        self.trunc = trunc
        self.floor = floor
        clean = {}
        for k, c in (coeffs or {}).items():
            if not isinstance(c, FormalLaurent):
                c = FormalLaurent.constant(c, field, trunc, floor)
            if not c.is_zero():
                clean[(int(k[0]), int(k[1]))] = c
        self.coeffs = clean

    # constructors --------------------------------------------------------
    @classmethod
    def mode(cls, k, coeff=1, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        return cls({tuple(k): coeff}, field, trunc, floor)

    @classmethod
    def constant(cls, c, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        return cls({(0, 0): c}, field, trunc, floor)

    def zero_like(self):
        return FourierPoly({}, self.field, self.trunc, self.floor)

    def one_like(self):
        return FourierPoly.constant(1, self.field, self.trunc, self.floor)

    def _new(self, coeffs, trunc=None):
        return FourierPoly(coeffs, self.field, self.trunc if trunc is None else trunc, self.floor)

    # inspection ----------------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, k):
        return self.coeffs.get(tuple(k), FormalLaurent.zero(self.field, self.trunc, self.floor))

    def support(self):
        return sorted(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())

    # linear structure ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FourierPoly):
            other = FourierPoly.constant(other, self.field, self.trunc, self.floor)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return FourierPoly(out, self.field, min(self.trunc, other.trunc), self.floor)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        """Multiply by a scalar or by a series in hbar."""
        if isinstance(s, FormalLaurent):
            return self._new({k: c * s for k, c in self.coeffs.items()}, min(self.trunc, s.trunc))
        s = self.field.coerce(s)
        if s.is_zero():
            return self.zero_like()
        return self._new({k: c * s for k, c in self.coeffs.items()})

    # products ------------------------------------------------------------
    def star(self, other, data=None):
        """Moyal product."""
        theta = (data or TorusPoissonData(self.field)).theta_scalar()
        out = {}
        trunc = min(self.trunc, other.trunc)
        for k, a in self.coeffs.items():
            for l, b in other.coeffs.items():
                w = wedge(k, l)
                ab = a * b
                if w:
                    ab = ab * _phase(self.field, theta, w, trunc, self.floor)
                kl = (k[0] + l[0], k[1] + l[1])
                out[kl] = out[kl] + ab if kl in out else ab
        return FourierPoly(out, self.field, trunc, self.floor)

    __mul__ = star

    def pointwise(self, other):
        """Commutative product (the hbar = 0 part of the Moyal product)."""
        out = {}
        for k, a in self.coeffs.items():
            for l, b in other.coeffs.items():
                kl = (k[0] + l[0], k[1] + l[1])
                ab = a * b
                out[kl] = out[kl] + ab if kl in out else ab
        return FourierPoly(out, self.field, min(self.trunc, other.trunc), self.floor)

    # calculus --------------------------------------------------------------
    def deriv(self, j):
        """Partial derivative along x^j (j = 1, 2)."""
        twopii = self.field.monomial(2, pi=1) * self.field.i
        return self._new({k: c * (twopii * k[j - 1]) for k, c in self.coeffs.items() if k[j - 1]})

    def integral(self):
        """Normalized Haar integral: the (0, 0) coefficient."""
        return self[(0, 0)]

    def translate(self, m):
        """Pull back along translation by ``-m * (alpha, beta)``."""
        if m == 0:
            return self
        F = self.field
        return self._new({k: c * F.monomial(1, u=m * k[0], v=m * k[1])
                          for k, c in self.coeffs.items()})

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FourierPoly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def isclose(self, other, rtol=1e-12, atol=1e-12):
        diff = self - other
        return all(c.isclose(FormalLaurent.zero(self.field, c.trunc, self.floor), rtol, atol)
                   for c in diff.coeffs.values())

    def to_json(self):
        from torusindex.serialize import series_to_json
        return [{"k": list(k), "series": series_to_json(c)} for k, c in self.items()]

    def __repr__(self):
        terms = ", ".join(f"{k}: {c}" for k, c in self.items())
        return f"FourierPoly({{{terms}}}, N={self.trunc})"


def moyal_star(a, b, data=None):
    return a.star(b, data)


def poisson_bracket(a, b, data=None):
    """``theta (d1 a d2 b - d2 a d1 b)``, bilinear over the series coefficients."""
    theta = (data or TorusPoissonData(a.field)).theta_scalar()
    t = a.deriv(1).pointwise(b.deriv(2)) - a.deriv(2).pointwise(b.deriv(1))
    return t.scale(theta)


def integrate(a):
    return a.integral()


def translate(a, m):
    return a.translate(m)


__all__ = [
    "FourierPoly", "TorusPoissonData", "moyal_star", "poisson_bracket", "integrate",
    "translate", "wedge",
]
