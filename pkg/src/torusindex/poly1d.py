"""Dense univariate polynomials with Fraction coefficients.

A polynomial is a tuple ``(c0, c1, ...)`` in ascending powers with no
trailing zeros; ``()`` is the zero polynomial.
"""

from fractions import Fraction
from math import comb

ZERO = ()
ONE = (Fraction(1),)
X = (Fraction(0), Fraction(1))


def trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def const(c):
    return trim((c,))


def degree(p):
    return len(p) - 1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    if c == 0:
        return ZERO
    return tuple(x * c for x in p)


def mul(p, q):
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p, n):
    out = ONE
    for _ in range(n):
        out = mul(out, p)
    return out


def deriv(p):
    return trim(tuple(i * p[i] for i in range(1, len(p))))


def antideriv(p):
    return trim((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(p)))


def evaluate(p, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def evaluate_float(p, xs):
    """Horner evaluation on a float or numpy array."""
    acc = xs * 0.0
    for c in reversed(p):
        acc = acc * xs + float(c)
    return acc


def taylor_shift(p, s):
    """Return ``q`` with ``q(x) = p(x + s)``."""
    if not p or s == 0:
        return p
    s = Fraction(s)
    n = len(p)
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        if c == 0:
            continue
        spow = Fraction(1)
        for j in range(i, -1, -1):
            out[j] += c * comb(i, j) * spow
            spow *= s
    return trim(out)


def compose_affine(p, a, b):
    """Return ``q`` with ``q(x) = p(a*x + b)``."""
    a = Fraction(a)
    q = taylor_shift(p, b)
    apow = Fraction(1)
    out = []
    for c in q:
        out.append(c * apow)
        apow *= a
    return trim(out)


def definite_integral(p, a, b):
    P = antideriv(p)
    return evaluate(P, b) - evaluate(P, a)


def to_sympy(p, x):
    return sum((c * x ** i for i, c in enumerate(p)), 0)


__all__ = [
    "ZERO", "ONE", "X", "trim", "const", "degree", "add", "neg", "sub", "scale",
    "mul", "power", "deriv", "antideriv", "evaluate", "evaluate_float",
    "taylor_shift", "compose_affine", "definite_integral", "to_sympy",
]
