"""The deformed crossed product by Z, matrices over it, and the Rieffel idempotent.

An element is a finite sum ``sum_n f_n W^n`` with ``f_n`` either a
:class:`FourierPoly` (Fourier mode) or a :class:`PWSeries` (subalgebra
mode, functions of x^1 only).  The product is

    (f W^m)(g W^n) = (f * translate(g, m)) W^(m+n),

i.e. ``W g W^-1 = translate(g, 1)``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from torusindex.fourier import FourierPoly
from torusindex.piecewise import PiecewiseFn, rieffel_functions
from torusindex.pwseries import PWSeries
from torusindex.scalar import EXACT
from torusindex.series import DEFAULT_ORDER


class CrossedError(ValueError):
    pass


def _coeff_kind(c):
    if isinstance(c, FourierPoly):
        return "fourier"
    if isinstance(c, PWSeries):
        return "pw"
    raise CrossedError(f"unsupported coefficient type {type(c).__name__}")


class CrossedElement:
    __slots__ = ("terms", "template")

    def __init__(self, terms, template):
        self.template = template.zero_like()
        kind = _coeff_kind(self.template)
        clean = {}
        for n, f in terms.items():
            if _coeff_kind(f) != kind:
                raise CrossedError("mixed Fourier and piecewise coefficients; promote explicitly")
            if not f.is_zero():
                clean[int(n)] = f
        self.terms = clean

    # constructors --------------------------------------------------------
    @classmethod
    def monomial(cls, f, n=0):
        return cls({n: f}, f)

    @classmethod
    def W(cls, template, n=1):
        return cls({n: template.one_like()}, template)

    def zero_like(self):
        return CrossedElement({}, self.template)

    def one_like(self):
        return CrossedElement({0: self.template.one_like()}, self.template)

    @property
    def kind(self):
        return _coeff_kind(self.template)

    # inspection ----------------------------------------------------------
    def __getitem__(self, n):
        return self.terms.get(n, self.template)

    def support(self):
        return sorted(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self):
        return not self.terms

    # linear structure ----------------------------------------------------
    def _wrap(self, other):
        if isinstance(other, CrossedElement):
            return other
        return self.one_like().scale(other)

    def __add__(self, other):
        o = self._wrap(other)
        out = dict(self.terms)
        for n, f in o.terms.items():
            out[n] = out[n] + f if n in out else f
        return CrossedElement(out, self.template)

    __radd__ = __add__

    def __neg__(self):
        return CrossedElement({n: -f for n, f in self.terms.items()}, self.template)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def scale(self, s):
        return CrossedElement({n: f.scale(s) for n, f in self.terms.items()}, self.template)

    # product -------------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, CrossedElement):
            return self.scale(other)
        out = {}
        for m, f in self.terms.items():
            for n, g in other.terms.items():
                p = f.star(g.translate(m))
                k = m + n
                out[k] = out[k] + p if k in out else p
        return CrossedElement(out, self.template)

    def __rmul__(self, other):
        return self.scale(other)

    # derivations and functionals --------------------------------------------
    def number_operator(self):
        """``N(f W^n) = n f W^n``."""
        return CrossedElement({n: f.scale(n) for n, f in self.terms.items()}, self.template)

    def deriv(self, j):
        return CrossedElement({n: f.deriv(j) for n, f in self.terms.items()}, self.template)

    def trace(self, **kw):
        """``F -> integral of F(0)``; a series (Fourier) or RealSeries (subalgebra)."""
        return self[0].integral(**kw)

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self):
        return {"terms": [{"n": n, "coeff": f.to_json()} for n, f in self.items()],
                "unit": False}

    def __repr__(self):
        return f"CrossedElement({self.kind}, support={self.support()})"


def convolve(F, G):
    return F * G


def subalgebra_embed(f, n=0, alpha=Fraction(3, 10), trunc=DEFAULT_ORDER):
    """``f W^n`` in subalgebra mode; ``f`` is a PiecewiseFn or a PWSeries."""
    if isinstance(f, PiecewiseFn):
        f = PWSeries.of(f, alpha, trunc)
    return CrossedElement.monomial(f, n)


def fourier_embed(f, n=0):
    return CrossedElement.monomial(f, n)


# --------------------------------------------------------------------------
# matrices


class MatrixCrossed:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise CrossedError("matrices must be square")
        self.rows = rows

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other):
        if self.size != other.size:
            raise CrossedError(f"size mismatch {self.size} vs {other.size}")

    def __add__(self, other):
        self._check(other)
        return MatrixCrossed([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return MatrixCrossed([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, other):
        self._check(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.rows[i][0] * other.rows[0][j]
                for k in range(1, n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return MatrixCrossed(out)

    def scale(self, s):
        return MatrixCrossed([[a.scale(s) for a in r] for r in self.rows])

    def trace_entries(self):
        return [self.rows[i][i] for i in range(self.size)]

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def to_json(self):
        return [[a.to_json() for a in r] for r in self.rows]


def mat_mul(A, B):
    return A * B


def mat_add(A, B):
    return A + B


def mat_identity(size, template):
    one = CrossedElement.monomial(template.one_like())
    zero = one.zero_like()
    return MatrixCrossed([[one if i == j else zero for j in range(size)] for i in range(size)])


def as_matrix(E):
    return E if isinstance(E, MatrixCrossed) else MatrixCrossed([[E]])


def sample_element(F, xs):
    """Sampled values of a subalgebra-mode element: {n: array (orders, len(xs))}."""
    return {n: f.sample(xs) for n, f in F.terms.items()}


GRID_POINTS = 10_000


def _grid_product(a, b, xs, alpha, trunc):
    """Grid values of ``a * b`` computed from point samples, never symbolically."""
    out = {}
    for m, f in a.terms.items():
        fv = f.sample(xs)
        for n, g in b.terms.items():
            gv = g.sample(xs - float(m * alpha))
            prod = np.zeros((trunc + 1, xs.size))
            for i in range(trunc + 1):
                for j in range(trunc + 1 - i):
                    prod[i + j] += fv[i] * gv[j]
            out[m + n] = out.get(m + n, 0) + prod
    return out


def idempotent_residual(E, grid=GRID_POINTS):
    """Max-norm of ``E*E - E``.

    Fourier mode: exact; the residual matrix is returned (zero iff
    idempotent).  Subalgebra mode: every entry of ``E*E`` is rebuilt from
    point samples on a uniform grid (translations applied to the sample
    points, hbar orders multiplied as arrays) and compared with samples of
    ``E``; the sup-norm over entries, W-powers and orders is returned.
    """
    E = as_matrix(E)
    kind = E[0, 0].kind
    if kind == "fourier":
        R = E * E - E
        return {"exact": True, "zero": R.is_zero(), "residual": R}
    xs = (np.arange(grid) + 0.5) / grid
    tmpl = E[0, 0].template
    alpha, trunc = tmpl.alpha, tmpl.trunc
    worst = 0.0
    size = E.size
    for i in range(size):
        for j in range(size):
            acc = {}
            for k in range(size):
                for n, arr in _grid_product(E[i, k], E[k, j], xs, alpha, trunc).items():
                    acc[n] = acc.get(n, 0) + arr
            for n, f in E[i, j].terms.items():
                acc[n] = acc.get(n, 0) - f.sample(xs)
            for arr in acc.values():
                if np.size(arr):
                    worst = max(worst, float(np.max(np.abs(arr))))
    return {"exact": False, "zero": worst == 0.0, "residual": worst}


def rieffel_projection(alpha, eps, ramp="quintic", trunc=DEFAULT_ORDER):
    """``W^-1 g + f + g W`` in subalgebra mode, with the building blocks."""
    alpha, eps = Fraction(alpha), Fraction(eps)
    f, g = rieffel_functions(alpha, eps, ramp)

    def emb(fn, n=0):
        return CrossedElement.monomial(PWSeries.of(fn, alpha, trunc), n)

    Winv = CrossedElement.W(PWSeries({}, alpha, trunc), -1)
    e = Winv * emb(g) + emb(f) + emb(g, 1)
    return e, f, g


def rieffel_identities(f, g, alpha):
    """The three exact piecewise identities behind idempotency."""
    G = g.translate(-alpha)            # g(x + alpha)
    return {
        "g*g(x-alpha)=0": (g * g.translate(alpha)).is_zero(),
        "g*(f+f(x-alpha))=g": (g * (f + f.translate(alpha)) - g).is_zero(),
        "f^2+g^2+g(x+alpha)^2=f": (f * f + g * g + G * G - f).is_zero(),
    }


def unit_fourier(field=EXACT, trunc=DEFAULT_ORDER):
    return CrossedElement.monomial(FourierPoly.constant(1, field, trunc))


__all__ = [
    "CrossedElement", "MatrixCrossed", "CrossedError", "convolve", "subalgebra_embed",
    "fourier_embed", "mat_mul", "mat_add", "mat_identity", "as_matrix", "idempotent_residual",
    "rieffel_projection", "rieffel_identities", "sample_element", "unit_fourier",
]
