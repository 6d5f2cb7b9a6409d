"""Scalar fields: exact rational functions in (pi, theta, u, v) over Q(i), or complex doubles.

The exact field treats ``pi``, ``theta``, ``u`` and ``v`` as algebraically
independent symbols, with ``u`` and ``v`` allowed negative exponents.  An
exact scalar is stored as ``num / den`` where ``num`` is a Laurent polynomial
with Gaussian-integer coefficients and ``den`` is a polynomial with integer
coefficients and no monomial factor.  The common case ``den`` = positive
integer never touches polynomial gcd code.

The numeric field binds ``theta``, ``alpha`` and ``beta`` to floats.  The
translation multipliers are ``u = exp(-2*pi*i*alpha)`` and
``v = exp(-2*pi*i*beta)``, so that mode ``k`` of ``f(x - m*alpha)`` picks up
``u**(m*k1) * v**(m*k2)``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from torusindex import kernels as K

SYMBOLS = ("pi", "theta", "u", "v")
_ONE_KEY = K.KEY_OFFSET


class ScalarError(ArithmeticError):
    pass


class BackendMismatch(ScalarError):
    pass


class NotInvertible(ScalarError, ZeroDivisionError):
    pass


def _monomial_key(pi=0, theta=0, u=0, v=0):
    return K.pack((pi, theta, u, v))


def _as_gauss_fraction(z):
    """Split an int/Fraction/complex-with-integral-parts into two Fractions."""
    if isinstance(z, Rational):
        return Fraction(z), Fraction(0)
    if isinstance(z, complex):
        if z.real != int(z.real) or z.imag != int(z.imag):
            raise TypeError("only integral complex literals are accepted exactly")
        return Fraction(int(z.real)), Fraction(int(z.imag))
    if isinstance(z, tuple) and len(z) == 2:
        return Fraction(z[0]), Fraction(z[1])
    raise TypeError(f"cannot interpret {z!r} as a Gaussian rational")


# --------------------------------------------------------------------------
# sympy bridge, used only when a denominator is a genuine polynomial


def _to_sympy(poly, gens):
    import sympy

    terms = {}
    for key, (r, i) in poly.items():
        terms[K.unpack(key)] = (r, i)
    re = sympy.Poly.from_dict({e: r for e, (r, i) in terms.items() if r}, *gens, domain="ZZ") \
        if any(r for r, _ in terms.values()) else sympy.Poly(0, *gens, domain="ZZ")
    im = sympy.Poly.from_dict({e: i for e, (r, i) in terms.items() if i}, *gens, domain="ZZ") \
        if any(i for _, i in terms.values()) else sympy.Poly(0, *gens, domain="ZZ")
    return re, im


def _from_sympy(re, im):
    out = {}
    if not re.is_zero:
        for e, c in re.terms():
            out[K.pack(e)] = (int(c), 0)
    if not im.is_zero:
        for e, c in im.terms():
            k = K.pack(e)
            r, _ = out.get(k, (0, 0))
            out[k] = (r, int(c))
    return out


def _min_exponents(poly):
    exps = [K.unpack(k) for k in poly]
    return tuple(min(e[j] for e in exps) for j in range(4))


def _normalize(num, den):
    if not num:
        return {}, {_ONE_KEY: (1, 0)}
    if len(den) == 1:
        (dk, (c, ci)), = den.items()
        if ci:
            raise ScalarError("denominator must be real")
        if dk != _ONE_KEY:
            num = K.shift(num, _ONE_KEY - dk)
        if c < 0:
            num = K.scale(num, -1, 0)
            c = -c
        g = math.gcd(K.content(num), c)
        if g > 1:
            num = K.divexact(num, g)
            c //= g
        return num, {_ONE_KEY: (c, 0)}
    return _normalize_general(num, den)


def _normalize_general(num, den):
    import sympy

    gens = sympy.symbols("x0:4")
    dm = _min_exponents(den)
    nm = _min_exponents(num)
    den = K.shift(den, _ONE_KEY - K.pack(dm))
    num_shift = K.pack(nm)
    num = K.shift(num, _ONE_KEY - num_shift)
    # value = x^nm * num / (x^dm * den)
    d_re, _ = _to_sympy(den, gens)
    n_re, n_im = _to_sympy(num, gens)
    g = sympy.gcd(d_re, n_re) if not n_re.is_zero else d_re
    if not n_im.is_zero:
        g = sympy.gcd(g, n_im)
    if g.total_degree() > 0 or abs(g.LC()) != 1:
        d_re = d_re.exquo(g)
        n_re = n_re.exquo(g) if not n_re.is_zero else n_re
        n_im = n_im.exquo(g) if not n_im.is_zero else n_im
    if d_re.LC() < 0:
        d_re, n_re, n_im = -d_re, -n_re, -n_im
    num = K.shift(_from_sympy(n_re, n_im), num_shift - _ONE_KEY)
    num = K.shift(num, _ONE_KEY - K.pack(dm))
    den = _from_sympy(d_re, sympy.Poly(0, *gens, domain="ZZ"))
    if len(den) == 1:
        return _normalize(num, den)
    return num, den


def _conj(poly):
    return {k: (r, -i) for k, (r, i) in poly.items()}


# --------------------------------------------------------------------------


class ExactField:
    """The exact field Q(i)(pi, theta, u, v)."""

    backend = "exact"

    def __repr__(self):
        return "ExactField()"

    def __eq__(self, other):
        return isinstance(other, ExactField)

    def __hash__(self):
        return hash("exact")

    def make(self, num, den=None):
        return ExactScalar(num, den if den is not None else {_ONE_KEY: (1, 0)})

    def const(self, z):
        re, im = _as_gauss_fraction(z)
        d = math.lcm(re.denominator, im.denominator)
        num = {_ONE_KEY: (re.numerator * (d // re.denominator), im.numerator * (d // im.denominator))}
        if not (num[_ONE_KEY][0] or num[_ONE_KEY][1]):
            return self.zero
        return ExactScalar(*_normalize(num, {_ONE_KEY: (d, 0)}))

    def monomial(self, coeff=1, pi=0, theta=0, u=0, v=0):
        c = self.const(coeff)
        if c.is_zero():
            return c
        return ExactScalar(K.shift(c.num, _monomial_key(pi, theta, u, v) - _ONE_KEY), c.den)

    @property
    def zero(self):
        return _EXACT_ZERO

    @property
    def one(self):
        return _EXACT_ONE

    @property
    def i(self):
        return self.const(1j)

    @property
    def pi(self):
        return self.monomial(pi=1)

    @property
    def theta(self):
        return self.monomial(theta=1)

    @property
    def u(self):
        return self.monomial(u=1)

    @property
    def v(self):
        return self.monomial(v=1)

    def coerce(self, x):
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, NumericScalar):
            raise BackendMismatch("numeric scalar given to the exact field")
        return self.const(x)


class ExactScalar:
    __slots__ = ("num", "den")
    field = None  # set below

    def __init__(self, num, den):
        self.num = num
        self.den = den

    # -- predicates ------------------------------------------------------
    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == self.den

    def _den_int(self):
        if len(self.den) == 1:
            (k, (c, _)), = self.den.items()
            if k == _ONE_KEY:
                return c
        return None

    def is_monomial(self):
        return len(self.num) == 1 and self._den_int() is not None

    # -- arithmetic --------------------------------------------------------
    def _other(self, other):
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, NumericScalar):
            raise BackendMismatch("cannot mix exact and numeric scalars")
        return EXACT.const(other)

    def __add__(self, other):
        o = self._other(other)
        if not o.num:
            return self
        if not self.num:
            return o
        c1, c2 = self._den_int(), o._den_int()
        if c1 is not None and c2 is not None:
            g = math.gcd(c1, c2)
            num = K.add(self.num, o.num, c2 // g, c1 // g)
            return ExactScalar(*_normalize(num, {_ONE_KEY: (c1 // g * c2, 0)}))
        num = K.add(K.mul(self.num, o.den), K.mul(o.num, self.den))
        return ExactScalar(*_normalize(num, K.mul(self.den, o.den)))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(K.scale(self.num, -1, 0), self.den)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        if not self.num or not o.num:
            return _EXACT_ZERO
        c1, c2 = self._den_int(), o._den_int()
        num = K.mul(self.num, o.num)
        if c1 is not None and c2 is not None:
            return ExactScalar(*_normalize(num, {_ONE_KEY: (c1 * c2, 0)}))
        return ExactScalar(*_normalize(num, K.mul(self.den, o.den)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise NotInvertible("division by the zero scalar")
        if len(self.num) == 1:
            (k, (r, i)), = self.num.items()
            norm = r * r + i * i
            num = K.scale(K.shift(self.den, _ONE_KEY - k), r, -i)
            return ExactScalar(*_normalize(num, {_ONE_KEY: (norm, 0)}))
        cj = _conj(self.num)
        norm = K.mul(self.num, cj)  # real polynomial
        return ExactScalar(*_normalize(K.mul(self.den, cj), norm))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = _EXACT_ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate_formal(self):
        """Apply i -> -i, leaving the symbols fixed."""
        return ExactScalar(_conj(self.num), self.den)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, NumericScalar):
            return NotImplemented
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        if self._den_int() is not None and o._den_int() is not None:
            return self.num == o.num and self.den == o.den
        return K.mul(self.num, o.den) == K.mul(o.num, self.den)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # -- conversion ------------------------------------------------------
    def to_fraction(self):
        """Return the value as a Fraction when it is a rational constant."""
        c = self._den_int()
        if not self.num:
            return Fraction(0)
        if c is None or len(self.num) != 1 or _ONE_KEY not in self.num:
            raise ValueError(f"{self} is not a rational constant")
        r, i = self.num[_ONE_KEY]
        if i:
            raise ValueError(f"{self} is not real")
        return Fraction(r, c)

    def is_rational_constant(self):
        try:
            self.to_fraction()
        except ValueError:
            return False
        return True

    def evaluate(self, pi, theta, u, v):
        vals = (pi, theta, u, v)

        def ev(poly):
            total = 0j
            for key, (r, i) in poly.items():
                term = complex(r, i)
                for base, e in zip(vals, K.unpack(key)):
                    if e:
                        term *= base ** e
                total += term
            return total

        return ev(self.num) / ev(self.den)

    def monomials(self):
        """Yield ``(coefficient Fraction pair, exponent tuple)`` for the numerator / den."""
        c = self._den_int()
        for key, (r, i) in sorted(self.num.items()):
            yield (Fraction(r, c or 1), Fraction(i, c or 1)), K.unpack(key)

    def __repr__(self):
        return f"ExactScalar({format_exact(self)})"

    def __str__(self):
        return format_exact(self)


ExactScalar.field = None
EXACT = ExactField()
ExactScalar.field = EXACT
_EXACT_ZERO = ExactScalar({}, {_ONE_KEY: (1, 0)})
_EXACT_ONE = ExactScalar({_ONE_KEY: (1, 0)}, {_ONE_KEY: (1, 0)})


# --------------------------------------------------------------------------
# printing


def _fmt_rat(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(re, im):
    """Format a Gaussian rational as ``-1``, ``3/10``, ``2*i``, ``(1 + 2*i)``."""
    if im == 0:
        return _fmt_rat(re)
    ims = "i" if im == 1 else "-i" if im == -1 else f"{_fmt_rat(im)}*i"
    if re == 0:
        return ims
    sign = "-" if im < 0 else "+"
    ima = "i" if abs(im) == 1 else f"{_fmt_rat(abs(im))}*i"
    return f"({_fmt_rat(re)} {sign} {ima})"


def format_monomial(exps, names=SYMBOLS):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return parts


def _format_poly(poly, scale=1):
    terms = []
    for key in sorted(poly, reverse=True):
        r, i = poly[key]
        coeff = format_gauss(Fraction(r, scale), Fraction(i, scale))
        mono = format_monomial(K.unpack(key))
        if mono:
            if coeff == "1":
                terms.append(" * ".join(mono))
            elif coeff == "-1":
                terms.append("-" + " * ".join(mono))
            else:
                terms.append(" * ".join([coeff] + mono))
        else:
            terms.append(coeff)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def format_exact(s):
    if s.is_zero():
        return "0"
    c = s._den_int()
    if c is not None:
        return _format_poly(s.num, c)
    num = _format_poly(s.num)
    if len(s.num) > 1:
        num = f"({num})"
    return f"{num}/({_format_poly(s.den)})"


# --------------------------------------------------------------------------


class NumericField:
    """Complex doubles with theta, alpha, beta bound to reals."""

    backend = "numeric"

    def __init__(self, theta=1.0, alpha=0.3, beta=math.sqrt(2) - 1):
        self.theta_value = float(theta)
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.u_value = cmath.exp(-2j * math.pi * self.alpha)
        self.v_value = cmath.exp(-2j * math.pi * self.beta)

    def __repr__(self):
        return f"NumericField(theta={self.theta_value}, alpha={self.alpha}, beta={self.beta})"

    def __eq__(self, other):
        return isinstance(other, NumericField) and (
            self.theta_value, self.alpha, self.beta
        ) == (other.theta_value, other.alpha, other.beta)

    def __hash__(self):
        return hash(("numeric", self.theta_value, self.alpha, self.beta))

    def _s(self, z):
        return NumericScalar(complex(z), self)

    def const(self, z):
        re, im = _as_gauss_fraction(z) if not isinstance(z, float) else (z, 0.0)
        return self._s(complex(float(re), float(im)))

    def monomial(self, coeff=1, pi=0, theta=0, u=0, v=0):
        val = self.const(coeff).value
        val *= math.pi ** pi * self.theta_value ** theta * self.u_value ** u * self.v_value ** v
        return self._s(val)

    @property
    def zero(self):
        return self._s(0)

    @property
    def one(self):
        return self._s(1)

    @property
    def i(self):
        return self._s(1j)

    @property
    def pi(self):
        return self._s(math.pi)

    @property
    def theta(self):
        return self._s(self.theta_value)

    @property
    def u(self):
        return self._s(self.u_value)

    @property
    def v(self):
        return self._s(self.v_value)

    def coerce(self, x):
        if isinstance(x, NumericScalar):
            if x.field != self:
                raise BackendMismatch("numeric scalars bound to different parameters")
            return x
        if isinstance(x, ExactScalar):
            return self.from_exact(x)
        if isinstance(x, (float, complex)):
            return self._s(x)
        return self.const(x)

    def from_exact(self, s):
        return self._s(s.evaluate(math.pi, self.theta_value, self.u_value, self.v_value))

    def near_resonances(self, cutoff, tol=1e-9):
        """Modes ``(a, b) != 0`` with ``|1 - u^a v^b| < tol`` inside the cutoff box."""
        hits = []
        for a in range(-cutoff, cutoff + 1):
            for b in range(-cutoff, cutoff + 1):
                if (a, b) != (0, 0) and abs(1 - self.u_value ** a * self.v_value ** b) < tol:
                    hits.append((a, b))
        return hits


class NumericScalar:
    __slots__ = ("value", "field")

    def __init__(self, value, field):
        self.value = complex(value)
        self.field = field

    def is_zero(self):
        return self.value == 0

    def is_one(self):
        return self.value == 1

    def _other(self, other):
        if isinstance(other, NumericScalar):
            if other.field != self.field:
                raise BackendMismatch("numeric scalars bound to different parameters")
            return other.value
        if isinstance(other, ExactScalar):
            raise BackendMismatch("cannot mix exact and numeric scalars")
        if isinstance(other, Fraction):
            return float(other)
        return complex(other)

    def __add__(self, other):
        return NumericScalar(self.value + self._other(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return NumericScalar(self.value - self._other(other), self.field)

    def __rsub__(self, other):
        return NumericScalar(self._other(other) - self.value, self.field)

    def __neg__(self):
        return NumericScalar(-self.value, self.field)

    def __mul__(self, other):
        return NumericScalar(self.value * self._other(other), self.field)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise NotInvertible("division by the zero scalar")
        return NumericScalar(1 / self.value, self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o == 0:
            raise NotInvertible("division by the zero scalar")
        return NumericScalar(self.value / o, self.field)

    def __rtruediv__(self, other):
        return NumericScalar(self._other(other), self.field) / self

    def __pow__(self, n):
        if self.value == 0 and n < 0:
            raise NotInvertible("division by the zero scalar")
        return NumericScalar(self.value ** n, self.field)

    def conjugate_formal(self):
        raise ScalarError("formal conjugation is only defined for exact scalars")

    def __eq__(self, other):
        try:
            return self.value == self._other(other)
        except (TypeError, ValueError):
            return NotImplemented

    __hash__ = None

    def isclose(self, other, rtol=1e-12, atol=1e-15):
        o = self._other(other)
        return abs(self.value - o) <= atol + rtol * max(abs(self.value), abs(o))

    def to_fraction(self):
        raise ValueError("numeric scalars have no exact rational value")

    def is_rational_constant(self):
        return False

    def __repr__(self):
        return f"NumericScalar({self.value!r})"

    def __str__(self):
        z = self.value
        if z.imag == 0:
            return repr(z.real)
        return repr(z)


@lru_cache(maxsize=None)
def factorial_fraction(n):
    return Fraction(1, math.factorial(n))


__all__ = [
    "EXACT", "ExactField", "ExactScalar", "NumericField", "NumericScalar",
    "ScalarError", "BackendMismatch", "NotInvertible", "format_gauss",
    "format_monomial", "format_exact", "SYMBOLS",
]
