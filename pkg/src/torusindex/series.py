"""Truncated formal Laurent series in hbar over a scalar field."""

from __future__ import annotations

from fractions import Fraction

from torusindex.scalar import (
    EXACT, BackendMismatch, ExactScalar, NotInvertible, NumericScalar, format_gauss,
    format_monomial,
)

DEFAULT_ORDER = 6
DEFAULT_FLOOR = 2


class SeriesError(ArithmeticError):
    pass


class FormalLaurent:
    """``sum_n c_n hbar^n`` for ``-floor <= n <= trunc``, known up to ``O(hbar^(trunc+1))``.

    Immutable.  Zero coefficients are never stored.
    """

    __slots__ = ("field", "coeffs", "trunc", "floor")

    def __init__(self, field, coeffs=None, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        self.field = field
        self.trunc = trunc
        self.floor = floor
        clean = {}
        for n, c in (coeffs or {}).items():
            if n > trunc:
                continue
            c = field.coerce(c)
            if c.is_zero():
                continue
            if n < -floor:
                raise SeriesError(f"order {n} below the Laurent floor -{floor}")
            clean[n] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        return cls(field, {}, trunc, floor)

    @classmethod
    def one(cls, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        return cls(field, {0: field.one}, trunc, floor)

    @classmethod
    def constant(cls, c, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        return cls(field, {0: c}, trunc, floor)

    @classmethod
    def monomial(cls, c, order, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        return cls(field, {order: c}, trunc, floor)

    @classmethod
    def exp_linear(cls, c, field=EXACT, trunc=DEFAULT_ORDER, floor=DEFAULT_FLOOR):
        """``exp(c * hbar)`` expanded to ``trunc``."""
        c = field.coerce(c)
        coeffs = {}
        term = field.one
        for m in range(trunc + 1):
            coeffs[m] = term
            term = term * c * Fraction(1, m + 1)
        return cls(field, coeffs, trunc, floor)

    def _like(self, coeffs, trunc=None):
        return FormalLaurent(self.field, coeffs, self.trunc if trunc is None else trunc, self.floor)

    # -- inspection --------------------------------------------------------
    def valuation(self):
        """Lowest stored order, or ``trunc + 1`` for the zero series."""
        return min(self.coeffs) if self.coeffs else self.trunc + 1

    @property
    def min_order(self):
        return self.valuation()

    def __getitem__(self, n):
        return self.coeffs.get(n, self.field.zero)

    def items(self):
        return sorted(self.coeffs.items())

    def is_zero(self):
        return not self.coeffs

    def truncate(self, n):
        if n >= self.trunc:
            return self
        return self._like({k: c for k, c in self.coeffs.items() if k <= n}, n)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, FormalLaurent):
            return FormalLaurent.constant(self.field.coerce(other), self.field, self.trunc, self.floor)
        if other.field != self.field:
            raise BackendMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        o = self._check(other)
        trunc = min(self.trunc, o.trunc)
        out = dict(self.coeffs)
        for n, c in o.coeffs.items():
            out[n] = out[n] + c if n in out else c
        return FormalLaurent(self.field, out, trunc, max(self.floor, o.floor))

    __radd__ = __add__

    def __neg__(self):
        return self._like({n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (ExactScalar, NumericScalar, int, Fraction, complex, float)):
            s = self.field.coerce(other)
            if s.is_zero():
                return self._like({})
            return self._like({n: c * s for n, c in self.coeffs.items()})
        o = self._check(other)
        va, vb = self.valuation(), o.valuation()
        trunc = min(self.trunc, o.trunc, self.trunc + vb, o.trunc + va)
        floor = max(self.floor, o.floor)
        out = {}
        for n, a in self.coeffs.items():
            for m, b in o.coeffs.items():
                k = n + m
                if k > trunc:
                    continue
                p = a * b
                out[k] = out[k] + p if k in out else p
        if out and min(out) < -floor:
            raise SeriesError(f"product reaches order {min(out)} below the floor -{floor}")
        return FormalLaurent(self.field, out, trunc, floor)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``hbar**k``."""
        return FormalLaurent(self.field, {n + k: c for n, c in self.coeffs.items()},
                             self.trunc + k, self.floor)

    def invert(self):
        if not self.coeffs:
            raise NotInvertible("zero series (lowest coefficient vanishes)")
        v = self.valuation()
        lead = self.coeffs[v]
        if lead.is_zero():
            raise NotInvertible("lowest coefficient is zero")
        inv_lead = lead.inverse()
        # relative precision of self is trunc - v, so the inverse is known to trunc - 2v
        trunc = min(self.trunc, self.trunc - 2 * v)
        length = trunc + v
        if -v < -self.floor:
            raise SeriesError("inverse drops below the Laurent floor")
        b = [inv_lead]
        for n in range(1, length + 1):
            acc = self.field.zero
            for j in range(1, n + 1):
                a = self.coeffs.get(v + j)
                if a is not None:
                    acc = acc + a * b[n - j]
            b.append(-(acc * inv_lead))
        return FormalLaurent(self.field, {n - v: c for n, c in enumerate(b)}, trunc, self.floor)

    def __truediv__(self, other):
        if isinstance(other, FormalLaurent):
            return self * other.invert()
        return self * self.field.coerce(other).inverse()

    def __pow__(self, n):
        if n < 0:
            return self.invert() ** (-n)
        out = FormalLaurent.one(self.field, self.trunc, self.floor)
        for _ in range(n):
            out = out * self
        return out

    def map(self, fn):
        return self._like({n: fn(c) for n, c in self.coeffs.items()})

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FormalLaurent):
            if other.field != self.field:
                return False
            upto = min(self.trunc, other.trunc)
        else:
            try:
                other = self._check(other)
            except (TypeError, BackendMismatch):
                return NotImplemented
            upto = self.trunc
        keys = {n for n in self.coeffs if n <= upto} | {n for n in other.coeffs if n <= upto}
        return all(self[n] == other[n] for n in keys)

    __hash__ = None

    def isclose(self, other, rtol=1e-12, atol=1e-12):
        o = self._check(other)
        upto = min(self.trunc, o.trunc)
        keys = {n for n in self.coeffs if n <= upto} | {n for n in o.coeffs if n <= upto}
        for n in keys:
            a, b = self[n], o[n]
            if isinstance(a, NumericScalar):
                if not a.isclose(b, rtol, atol):
                    return False
            elif a != b:
                return False
        return True

    def evaluate(self, field):
        """Map an exact series into a numeric field coefficientwise."""
        return FormalLaurent(field, {n: field.from_exact(c) for n, c in self.coeffs.items()},
                             self.trunc, self.floor)

    # -- text --------------------------------------------------------------
    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"FormalLaurent({format_series(self)}, N={self.trunc})"


def _h(n):
    return "h" if n == 1 else f"h^{n}"


def _format_term(c, n):
    if isinstance(c, ExactScalar) and c.is_monomial():
        ((re, im), exps), = list(c.monomials())
        parts = [format_gauss(re, im)]
        if n:
            parts.append(_h(n))
        parts += format_monomial(exps)
        return " * ".join(parts)
    txt = str(c)
    if isinstance(c, ExactScalar) and (len(c.num) > 1 or c._den_int() is None):
        txt = f"({txt})"
    return txt if n == 0 else f"{txt} * {_h(n)}"


def format_series(s):
    """Canonical text: ``sum(c_n * h^n)`` joined with `` + ``; ``0`` when empty."""
    if not s.coeffs:
        return "0"
    return " + ".join(_format_term(c, n) for n, c in s.items())


__all__ = ["FormalLaurent", "SeriesError", "format_series", "DEFAULT_ORDER", "DEFAULT_FLOOR"]
