"""Series in hbar whose coefficients are exact piecewise functions of x^1.

This is the coefficient ring of the subalgebra of functions constant along
the second torus direction.  There the Moyal product collapses to the
pointwise product (every term of the bidifferential expansion carries a
derivative in x^2), so ``star`` is the Cauchy product of pointwise products.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from torusindex.piecewise import ExactReal, PiecewiseFn
from torusindex.scalar import EXACT
from torusindex.series import DEFAULT_FLOOR, DEFAULT_ORDER, FormalLaurent


class RealSeries:
    """``sum_n c_n hbar^n`` with ExactReal (or float) coefficients."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs=None, trunc=DEFAULT_ORDER):
        self.trunc = trunc
        self.coeffs = {n: c for n, c in (coeffs or {}).items()
                       if n <= trunc and not _is_zero(c)}

    def __add__(self, other):
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out[n] + c if n in out else c
        return RealSeries(out, min(self.trunc, other.trunc))

    def __neg__(self):
        return RealSeries({n: -c for n, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q):
        return RealSeries({n: c * q for n, c in self.coeffs.items()}, self.trunc)

    def is_exact(self):
        return all(isinstance(c, ExactReal) and c.exact for c in self.coeffs.values())

    def is_rational(self):
        return all(isinstance(c, ExactReal) and c.is_rational() for c in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, RealSeries):
            return NotImplemented
        return all(_is_zero(c) for c in (self - other).coeffs.values())

    __hash__ = None

    def floats(self):
        return {n: float(c) for n, c in sorted(self.coeffs.items())}

    def to_laurent(self, field=EXACT, factor=1, shift=0, floor=DEFAULT_FLOOR):
        """``factor * hbar^shift * self`` as a FormalLaurent.

        Exact fields need rational coefficients; numeric fields take floats.
        """
        coeffs = {}
        for n, c in self.coeffs.items():
            if field is EXACT or getattr(field, "backend", None) == "exact":
                val = c.to_fraction() if isinstance(c, ExactReal) else Fraction(c)
            else:
                val = float(c)
            coeffs[n + shift] = field.coerce(factor) * val
        return FormalLaurent(field, coeffs, self.trunc + shift, floor)

    def __repr__(self):
        return f"RealSeries({self.coeffs}, N={self.trunc})"


def _is_zero(c):
    if isinstance(c, ExactReal):
        return c.is_zero()
    return c == 0


class PWSeries:
    """Coefficient object of the subalgebra: orders of hbar -> PiecewiseFn."""

    __slots__ = ("coeffs", "alpha", "trunc")

    def __init__(self, coeffs, alpha, trunc=DEFAULT_ORDER):
        self.alpha = Fraction(alpha)
        self.trunc = trunc
        clean = {}
        for n, f in (coeffs or {}).items():
            if n > trunc:
                continue
            if not isinstance(f, PiecewiseFn):
                f = PiecewiseFn.constant(f)
            if not f.is_zero():
                clean[n] = f
        self.coeffs = clean

    @classmethod
    def of(cls, f, alpha, trunc=DEFAULT_ORDER, order=0):
        return cls({order: f}, alpha, trunc)

    def zero_like(self):
        return PWSeries({}, self.alpha, self.trunc)

    def one_like(self):
        return PWSeries({0: PiecewiseFn.constant(1)}, self.alpha, self.trunc)

    def _new(self, coeffs, trunc=None):
        return PWSeries(coeffs, self.alpha, self.trunc if trunc is None else trunc)

    def _check(self, other):
        if not isinstance(other, PWSeries):
            return self.one_like().scale(other)
        if other.alpha != self.alpha:
            raise ValueError("piecewise series built for different rotation numbers")
        return other

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, n):
        return self.coeffs.get(n, PiecewiseFn.zero())

    def items(self):
        return sorted(self.coeffs.items())

    def __add__(self, other):
        o = self._check(other)
        out = dict(self.coeffs)
        for n, f in o.coeffs.items():
            out[n] = out[n] + f if n in out else f
        return self._new(out, min(self.trunc, o.trunc))

    __radd__ = __add__

    def __neg__(self):
        return self._new({n: -f for n, f in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, s):
        if isinstance(s, PWSeries):
            return self.star(s)
        if isinstance(s, FormalLaurent):
            raise TypeError("scale piecewise series by rationals or other piecewise series")
        s = Fraction(s)
        if s == 0:
            return self.zero_like()
        return self._new({n: f.scale(s) for n, f in self.coeffs.items()})

    def shift(self, k):
        """Multiply by ``hbar**k``."""
        return PWSeries({n + k: f for n, f in self.coeffs.items()}, self.alpha, self.trunc + k)

    def star(self, other, data=None):
        o = self._check(other)
        trunc = min(self.trunc, o.trunc)
        out = {}
        for n, f in self.coeffs.items():
            for m, g in o.coeffs.items():
                if n + m > trunc:
                    continue
                fg = f * g
                out[n + m] = out[n + m] + fg if n + m in out else fg
        return self._new(out, trunc)

    __mul__ = star
    pointwise = star

    def translate(self, m):
        """``x -> f(x - m alpha)``."""
        if m == 0:
            return self
        s = m * self.alpha
        return self._new({n: f.translate(s) for n, f in self.coeffs.items()})

    def deriv(self, j):
        if j == 2:
            return self.zero_like()
        return self._new({n: f.derive() for n, f in self.coeffs.items()})

    def integral(self, method="exact"):
        return RealSeries({n: f.integrate(method) for n, f in self.coeffs.items()}, self.trunc)

    def invert(self):
        """Inverse of ``c + (higher orders)`` when ``c`` is a nonzero constant."""
        c0 = self.coeffs.get(0)
        if c0 is None or not c0.is_polynomial():
            raise ValueError("lowest coefficient must be a nonzero constant function")
        ps = c0.pieces
        if len(ps) != 1 or len(ps[0].A) != 1:
            raise ValueError("lowest coefficient must be a nonzero constant function")
        inv0 = 1 / ps[0].A[0]
        rest = (self - self.one_like().scale(ps[0].A[0])).scale(inv0)  # self = c0 (1 + rest)
        out = self.one_like()
        term = self.one_like()
        for _ in range(self.trunc):
            term = term.star(-rest)
            if term.is_zero():
                break
            out = out + term
        return out.scale(inv0)

    def sample(self, xs):
        """Values on a grid: array of shape (trunc + 1, len(xs)) for orders 0..trunc."""
        xs = np.asarray(xs, dtype=float)
        out = np.zeros((self.trunc + 1, xs.size))
        for n, f in self.coeffs.items():
            if 0 <= n <= self.trunc:
                out[n] = f(xs)
        return out

    def __eq__(self, other):
        if not isinstance(other, PWSeries):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self):
        return [{"order": n, "fn": f.to_json()} for n, f in self.items()]

    def __repr__(self):
        return f"PWSeries(orders={sorted(self.coeffs)}, N={self.trunc})"


__all__ = ["PWSeries", "RealSeries"]
