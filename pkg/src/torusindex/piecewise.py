"""Exact piecewise functions on the circle R/Z.

Each piece on ``[a, b]`` carries the value

    A(x) + B(x) * r(x) + C(x) * r'(x),      r(x) = sqrt(P(x - anchor)),

with ``A, B, C`` rational polynomials in the global coordinate ``x`` and an
optional :class:`RootTag` ``(anchor, P)``.  Multiplying two root parts with
the same tag gives ``r*r = P`` and ``r*r' = P'/2``, so products of Rieffel
type functions stay exact.  Only first derivatives of root parts are
supported (``r''`` is rejected), which is all a single derivation needs.

Integrals come back as :class:`ExactReal`: a rational number plus a formal
combination of root atoms

    M(P, j, y) = int_0^y s^j sqrt(P(s)) ds,      R(P, y) = sqrt(P(y)),

keyed in the local coordinate of the tag so that translated copies of the
same root share atoms and cancel symbolically.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy
from scipy import integrate as sp_integrate

from torusindex import poly1d as P1


class PiecewiseError(ValueError):
    pass


class IncompatibleRoots(PiecewiseError):
    """Two different square roots meet on the same interval."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise PiecewiseError("exact piecewise functions need rational parameters")
    return Fraction(x)


# --------------------------------------------------------------------------
# exact reals with root atoms


def _rational_sqrt(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@lru_cache(maxsize=None)
def _atom_value(key):
    kind = key[0]
    if kind == "R":
        _, p, y = key
        return math.sqrt(max(float(P1.evaluate(p, y)), 0.0))
    _, p, j, y = key

    def integrand(s):
        return s ** j * math.sqrt(max(P1.evaluate_float(p, s), 0.0))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sp_integrate.IntegrationWarning)
        val, _ = sp_integrate.quad(integrand, 0.0, float(y), epsabs=1e-15, epsrel=1e-13, limit=200)
    return val


class ExactReal:
    """``rational + sum(coeff * atom)`` with exact Fraction coefficients."""

    __slots__ = ("rational", "atoms", "exact")

    def __init__(self, rational=Fraction(0), atoms=None, exact=True):
        self.rational = Fraction(rational)
        self.atoms = {k: c for k, c in (atoms or {}).items() if c != 0}
        self.exact = exact

    @staticmethod
    def sqrt_at(p, y):
        """``sqrt(p(y))`` as an exact real."""
        val = P1.evaluate(p, y)
        root = _rational_sqrt(val)
        if root is not None:
            return ExactReal(root)
        return ExactReal(0, {("R", p, Fraction(y)): Fraction(1)})

    @staticmethod
    def moment(p, j, y):
        if y == 0:
            return ExactReal()
        return ExactReal(0, {("M", p, j, Fraction(y)): Fraction(1)})

    def __add__(self, other):
        if not isinstance(other, ExactReal):
            return ExactReal(self.rational + Fraction(other), self.atoms, self.exact)
        atoms = dict(self.atoms)
        for k, c in other.atoms.items():
            atoms[k] = atoms.get(k, 0) + c
        return ExactReal(self.rational + other.rational, atoms, self.exact and other.exact)

    __radd__ = __add__

    def __neg__(self):
        return ExactReal(-self.rational, {k: -c for k, c in self.atoms.items()}, self.exact)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        c = Fraction(c)
        return ExactReal(self.rational * c, {k: v * c for k, v in self.atoms.items()}, self.exact)

    __rmul__ = __mul__

    def is_rational(self):
        return self.exact and not self.atoms

    def is_zero(self):
        return self.exact and not self.atoms and self.rational == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactReal(other)
        if not isinstance(other, ExactReal):
            return NotImplemented
        if not (self.exact and other.exact):
            return False
        return self.rational == other.rational and self.atoms == other.atoms

    __hash__ = None

    def __float__(self):
        return float(self.rational) + sum(float(c) * _atom_value(k) for k, c in self.atoms.items())

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("value involves root atoms")
        return self.rational

    def __repr__(self):
        if not self.atoms:
            return f"ExactReal({self.rational})"
        return f"ExactReal({self.rational} + {len(self.atoms)} root atoms ~ {float(self)!r})"


# --------------------------------------------------------------------------
# pieces


@dataclass(frozen=True)
class RootTag:
    """``sqrt(P(x - anchor))`` with ``P`` in the local coordinate."""

    anchor: Fraction
    P: tuple

    def global_poly(self):
        return _shifted(self.P, self.anchor)

    def shifted(self, s):
        return RootTag(self.anchor + s, self.P)


@lru_cache(maxsize=None)
def _shifted(p, anchor):
    return P1.taylor_shift(p, -anchor)


@lru_cache(maxsize=None)
def _deriv_cached(p):
    return P1.deriv(p)


@lru_cache(maxsize=None)
def _interior_zero_free(p, lo, hi):
    poly = sympy.Poly(P1.to_sympy(p, sympy.Symbol("s")) or 0, sympy.Symbol("s"), domain="QQ")
    if poly.is_zero:
        return False
    total = poly.count_roots(lo, hi)
    ends = sum(1 for y in (lo, hi) if P1.evaluate(p, y) == 0)
    return total - ends == 0


@dataclass(frozen=True)
class Piece:
    a: Fraction
    b: Fraction
    A: tuple = P1.ZERO
    B: tuple = P1.ZERO
    C: tuple = P1.ZERO
    tag: RootTag | None = None

    def normalized(self):
        if not self.B and not self.C and self.tag is not None:
            return Piece(self.a, self.b, self.A, P1.ZERO, P1.ZERO, None)
        return self

    def is_zero(self):
        return not self.A and not self.B and not self.C

    def has_root(self):
        return bool(self.B or self.C)

    def restrict(self, a, b):
        return Piece(a, b, self.A, self.B, self.C, self.tag)

    def shifted(self, s):
        tag = self.tag.shifted(s) if self.tag is not None else None
        return Piece(self.a + s, self.b + s, P1.taylor_shift(self.A, -s),
                     P1.taylor_shift(self.B, -s), P1.taylor_shift(self.C, -s), tag)

    def value_float(self, xs):
        # Products of ramps have large global-coordinate coefficients; evaluating
        # them in floats cancels badly, so shift exactly to the left endpoint first.
        t = xs - float(self.a)
        out = P1.evaluate_float(_local(self.A, self.a), t)
        if self.has_root():
            p = P1.evaluate_float(self.tag.P, xs - float(self.tag.anchor))
            p = np.maximum(p, 0.0)
            r = np.sqrt(p)
            if self.B:
                out = out + P1.evaluate_float(_local(self.B, self.a), t) * r
            if self.C:
                dp = P1.evaluate_float(_deriv_cached(self.tag.P), xs - float(self.tag.anchor))
                with np.errstate(divide="ignore", invalid="ignore"):
                    rp = np.where(r > 0, dp / (2 * np.where(r > 0, r, 1.0)), 0.0)
                out = out + P1.evaluate_float(_local(self.C, self.a), t) * rp
        return out


@lru_cache(maxsize=4096)
def _local(poly, a):
    """``poly(x + a)``: coefficients in the coordinate centred at ``a``."""
    return P1.taylor_shift(poly, a)


def _tag_merge(t1, t2, need1, need2):
    if not need1:
        return t2
    if not need2:
        return t1
    if t1 != t2:
        raise IncompatibleRoots(f"roots {t1} and {t2} overlap")
    return t1


def _piece_add(p, q, cq=1):
    tag = _tag_merge(p.tag, q.tag, p.has_root(), q.has_root())
    return Piece(p.a, p.b, P1.add(p.A, P1.scale(q.A, cq)), P1.add(p.B, P1.scale(q.B, cq)),
                 P1.add(p.C, P1.scale(q.C, cq)), tag).normalized()


def _piece_mul(p, q):
    if p.is_zero() or q.is_zero():
        return Piece(p.a, p.b)
    tag = _tag_merge(p.tag, q.tag, p.has_root(), q.has_root())
    A = P1.mul(p.A, q.A)
    B = P1.add(P1.mul(p.A, q.B), P1.mul(p.B, q.A))
    C = P1.add(P1.mul(p.A, q.C), P1.mul(p.C, q.A))
    if p.has_root() and q.has_root():
        if p.C and q.C:
            raise PiecewiseError("product of two root derivatives is not representable")
        Pg = tag.global_poly()
        dPg = P1.deriv(Pg)
        A = P1.add(A, P1.mul(P1.mul(p.B, q.B), Pg))
        cross = P1.add(P1.mul(p.B, q.C), P1.mul(p.C, q.B))
        A = P1.add(A, P1.scale(P1.mul(cross, dPg), Fraction(1, 2)))
    return Piece(p.a, p.b, A, B, C, tag).normalized()


def _piece_derive(p):
    if p.C:
        raise PiecewiseError("second derivative of a root piece is not supported")
    A = P1.deriv(p.A)
    if not p.B:
        return Piece(p.a, p.b, A)
    lo, hi = p.a - p.tag.anchor, p.b - p.tag.anchor
    if not _interior_zero_free(p.tag.P, lo, hi):
        raise PiecewiseError("root piece has an interior zero; its derivative is unbounded")
    return Piece(p.a, p.b, A, P1.deriv(p.B), p.B, p.tag)


def _piece_integral(p):
    """Exact integral of one piece over ``[a, b]``."""
    total = ExactReal(P1.definite_integral(p.A, p.a, p.b))
    if not p.has_root():
        return total
    tag = p.tag
    lo, hi = p.a - tag.anchor, p.b - tag.anchor
    # int C r' = [C r] - int C' r
    Bt = p.B
    if p.C:
        Cl = P1.taylor_shift(p.C, tag.anchor)
        total = total + ExactReal.sqrt_at(tag.P, hi) * P1.evaluate(Cl, hi)
        total = total - ExactReal.sqrt_at(tag.P, lo) * P1.evaluate(Cl, lo)
        Bt = P1.sub(Bt, P1.deriv(p.C))
    for j, c in enumerate(P1.taylor_shift(Bt, tag.anchor)):
        if c:
            total = total + (ExactReal.moment(tag.P, j, hi) - ExactReal.moment(tag.P, j, lo)) * c
    return total


# --------------------------------------------------------------------------


class PiecewiseFn:
    """A function on R/Z given by consecutive pieces covering ``[0, 1]``."""

    __slots__ = ("pieces",)

    def __init__(self, pieces):
        pieces = tuple(pieces)
        if not pieces or pieces[0].a != 0 or pieces[-1].b != 1:
            raise PiecewiseError("pieces must cover [0, 1]")
        for p, q in zip(pieces, pieces[1:]):
            if p.b != q.a:
                raise PiecewiseError("pieces must be consecutive")
        for p in pieces:
            if not p.a < p.b:
                raise PiecewiseError("breakpoints must be strictly increasing")
        self.pieces = pieces

    # constructors
    @classmethod
    def constant(cls, c):
        return cls([Piece(Fraction(0), Fraction(1), P1.const(_frac(c)))])

    @classmethod
    def zero(cls):
        return cls.constant(0)

    @classmethod
    def from_polys(cls, breakpoints, polys):
        """Polynomial pieces; ``breakpoints`` start at 0 and ``polys[i]`` lives on the i-th interval."""
        bps = [_frac(b) for b in breakpoints] + [Fraction(1)]
        return cls([Piece(bps[i], bps[i + 1], P1.trim(polys[i])) for i in range(len(polys))])

    @property
    def breakpoints(self):
        return [p.a for p in self.pieces]

    # refinement
    def refine(self, points):
        pts = sorted(set(points))
        out = []
        for p in self.pieces:
            cuts = [x for x in pts if p.a < x < p.b]
            edges = [p.a] + cuts + [p.b]
            out.extend(p.restrict(edges[i], edges[i + 1]) for i in range(len(edges) - 1))
        return PiecewiseFn(out)

    def _aligned(self, other):
        pts = set(self.breakpoints) | set(other.breakpoints)
        return self.refine(pts).pieces, other.refine(pts).pieces

    # algebra
    def __add__(self, other):
        if not isinstance(other, PiecewiseFn):
            other = PiecewiseFn.constant(other)
        a, b = self._aligned(other)
        return PiecewiseFn([_piece_add(p, q) for p, q in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return PiecewiseFn([Piece(p.a, p.b, P1.neg(p.A), P1.neg(p.B), P1.neg(p.C), p.tag)
                            for p in self.pieces])

    def __sub__(self, other):
        if not isinstance(other, PiecewiseFn):
            other = PiecewiseFn.constant(other)
        a, b = self._aligned(other)
        return PiecewiseFn([_piece_add(p, q, -1) for p, q in zip(a, b)])

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _frac(c)
        return PiecewiseFn([Piece(p.a, p.b, P1.scale(p.A, c), P1.scale(p.B, c),
                                  P1.scale(p.C, c), p.tag).normalized() for p in self.pieces])

    def __mul__(self, other):
        if not isinstance(other, PiecewiseFn):
            return self.scale(other)
        a, b = self._aligned(other)
        return PiecewiseFn([_piece_mul(p, q) for p, q in zip(a, b)])

    __rmul__ = __mul__

    def derive(self):
        return PiecewiseFn([_piece_derive(p) for p in self.pieces])

    def translate(self, s):
        """``x -> self(x - s)`` for a rational shift ``s``."""
        s = _frac(s)
        s = s - math.floor(s)
        if s == 0:
            return self
        shifted = [p.shifted(s) for p in self.pieces]
        low, high = [], []
        for p in shifted:
            if p.b <= 1:
                low.append(p)
            elif p.a >= 1:
                high.append(p.shifted(-1))
            else:
                low.append(p.restrict(p.a, Fraction(1)))
                high.append(p.restrict(Fraction(1), p.b).shifted(-1))
        return PiecewiseFn(high + low)

    # queries
    def is_zero(self):
        return all(p.is_zero() for p in self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseFn):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_polynomial(self):
        return not any(p.has_root() for p in self.pieces)

    def integrate(self, method="exact"):
        if method == "exact":
            total = ExactReal()
            for p in self.pieces:
                total = total + _piece_integral(p)
            return total
        if method == "quad":
            total = 0.0
            for p in self.pieces:
                def fn(x, p=p):
                    return float(p.value_float(np.array([x]))[0])
                val, _ = sp_integrate.quad(fn, float(p.a), float(p.b),
                                           epsabs=1e-13, epsrel=1e-12, limit=200)
                total += val
            return total
        raise ValueError(f"unknown integration method {method!r}")

    def __call__(self, xs):
        xs = np.asarray(xs, dtype=float)
        xm = np.mod(xs, 1.0)
        out = np.zeros_like(xm)
        for i, p in enumerate(self.pieces):
            lo, hi = float(p.a), float(p.b)
            mask = (xm >= lo) & ((xm < hi) if i < len(self.pieces) - 1 else (xm <= hi))
            if mask.any():
                out[mask] = p.value_float(xm[mask])
        return out

    def value_exact(self, x):
        """Exact value at a rational point inside a polynomial piece."""
        x = _frac(x) % 1
        for p in self.pieces:
            if p.a <= x < p.b:
                if p.has_root():
                    raise PiecewiseError("exact point values of root pieces are irrational")
                return P1.evaluate(p.A, x)
        raise PiecewiseError("point outside [0, 1)")

    def check_continuity(self, tol=1e-6):
        """Exact for polynomial joins; numeric across root pieces.

        A square root turns a rounding error of size 1e-16 in the radicand
        into roughly 1e-7 in the value, hence the loose default tolerance.
        """
        ps = self.pieces
        for i, p in enumerate(ps):
            q = ps[(i + 1) % len(ps)]
            xq = q.a if i + 1 < len(ps) else Fraction(0)
            if not p.has_root() and not q.has_root():
                if P1.evaluate(p.A, p.b) != P1.evaluate(q.A, xq):
                    return False
            else:
                left = float(p.value_float(np.array([float(p.b)]))[0])
                right = float(q.value_float(np.array([float(xq)]))[0])
                if abs(left - right) > tol:
                    return False
        return True

    def check_root_nonnegative(self, samples=16):
        """``P >= 0`` at Chebyshev points of every root piece."""
        for p in self.pieces:
            if not p.has_root():
                continue
            lo, hi = float(p.a - p.tag.anchor), float(p.b - p.tag.anchor)
            k = np.arange(samples)
            nodes = 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos((2 * k + 1) * np.pi / (2 * samples))
            if (P1.evaluate_float(p.tag.P, nodes) < 0).any():
                return False
        return True

    def to_json(self):
        def enc(poly):
            return [str(c) for c in poly]
        pieces = []
        for p in self.pieces:
            item = {"interval": [str(p.a), str(p.b)], "poly": enc(p.A)}
            if p.has_root():
                item["root"] = {"anchor": str(p.tag.anchor), "radicand": enc(p.tag.P),
                                "coeff": enc(p.B), "coeff_of_derivative": enc(p.C)}
            pieces.append(item)
        return {"breakpoints": [str(b) for b in self.breakpoints], "pieces": pieces}

    def __repr__(self):
        return f"PiecewiseFn({len(self.pieces)} pieces)"


# --------------------------------------------------------------------------
# ramps and Rieffel functions

RAMPS = {
    "quintic": (Fraction(0), Fraction(0), Fraction(0), Fraction(10), Fraction(-15), Fraction(6)),
    "cubic": (Fraction(0), Fraction(0), Fraction(3), Fraction(-2)),
}


def ramp_poly(name):
    try:
        return RAMPS[name]
    except KeyError:
        raise PiecewiseError(f"unknown ramp {name!r}; choose from {sorted(RAMPS)}") from None


def check_rieffel_params(alpha, eps):
    if not (0 < eps < alpha and alpha + eps < Fraction(1, 2)):
        raise PiecewiseError(
            f"need 0 < eps < alpha and alpha + eps < 1/2 (got alpha={alpha}, eps={eps})")


def rieffel_functions(alpha, eps, ramp="quintic"):
    """Return ``(f, g)`` with ``g = sqrt(f - f^2)`` supported on ``[alpha, alpha + eps]``."""
    alpha, eps = _frac(alpha), _frac(eps)
    check_rieffel_params(alpha, eps)
    r = ramp_poly(ramp)
    up = P1.compose_affine(r, 1 / eps, 0)                  # r(x / eps)
    down_local = P1.sub(P1.ONE, up)                         # 1 - r(t / eps)
    down = P1.taylor_shift(down_local, -alpha)
    f = PiecewiseFn([
        Piece(Fraction(0), eps, up),
        Piece(eps, alpha, P1.ONE),
        Piece(alpha, alpha + eps, down),
        Piece(alpha + eps, Fraction(1)),
    ])
    radicand = P1.mul(up, P1.sub(P1.ONE, up))               # r (1 - r) in t = x - alpha
    tag = RootTag(alpha, radicand)
    g = PiecewiseFn([
        Piece(Fraction(0), alpha),
        Piece(alpha, alpha + eps, P1.ZERO, P1.ONE, P1.ZERO, tag),
        Piece(alpha + eps, Fraction(1)),
    ])
    return f, g


__all__ = [
    "PiecewiseFn", "Piece", "RootTag", "ExactReal", "PiecewiseError", "IncompatibleRoots",
    "RAMPS", "ramp_poly", "rieffel_functions", "check_rieffel_params",
]
