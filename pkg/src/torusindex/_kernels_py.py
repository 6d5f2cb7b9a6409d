"""Pure-Python sparse Laurent polynomial kernels over the Gaussian integers.

A polynomial is a ``dict`` mapping a packed exponent key to a ``(re, im)``
pair of Python ints.  Keys pack four signed exponents (pi, theta, u, v) into
15-bit fields with a bias, so that multiplying monomials is integer addition
of keys minus :data:`KEY_OFFSET`.

This module is the reference implementation; ``_kernels.pyx`` must agree
with it exactly.
"""

from math import gcd

FIELD_BITS = 15
BIAS = 1 << (FIELD_BITS - 1)
NVARS = 4
KEY_OFFSET = sum(BIAS << (FIELD_BITS * j) for j in range(NVARS))
_MASK = (1 << FIELD_BITS) - 1

BACKEND = "python"


def pack(exps):
    key = 0
    for j, e in enumerate(exps):
        if not -BIAS < e < BIAS:
            raise OverflowError(f"exponent {e} out of packable range")
        key |= (e + BIAS) << (FIELD_BITS * j)
    return key


def unpack(key):
    return tuple(((key >> (FIELD_BITS * j)) & _MASK) - BIAS for j in range(NVARS))


def mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    off = KEY_OFFSET
    bitems = list(b.items())
    for ka, (ar, ai) in a.items():
        for kb, (br, bi) in bitems:
            k = ka + kb - off
            cr = ar * br - ai * bi
            ci = ar * bi + ai * br
            prev = get(k)
            if prev is None:
                out[k] = (cr, ci)
            else:
                out[k] = (prev[0] + cr, prev[1] + ci)
    return {k: v for k, v in out.items() if v[0] or v[1]}


def add(a, b, ca=1, cb=1):
    """Return ``ca*a + cb*b`` for integer multipliers ``ca``, ``cb``."""
    out = {}
    for k, (r, i) in a.items():
        out[k] = (ca * r, ca * i)
    for k, (r, i) in b.items():
        prev = out.get(k)
        if prev is None:
            out[k] = (cb * r, cb * i)
        else:
            out[k] = (prev[0] + cb * r, prev[1] + cb * i)
    return {k: v for k, v in out.items() if v[0] or v[1]}


def scale(a, re, im):
    if im == 0:
        if re == 0:
            return {}
        return {k: (r * re, i * re) for k, (r, i) in a.items()}
    out = {}
    for k, (r, i) in a.items():
        cr = r * re - i * im
        ci = r * im + i * re
        if cr or ci:
            out[k] = (cr, ci)
    return out


def content(a):
    g = 0
    for r, i in a.values():
        g = gcd(g, r, i)
        if g == 1:
            return 1
    return g


def divexact(a, c):
    return {k: (r // c, i // c) for k, (r, i) in a.items()}


def shift(a, dk):
    return {k + dk: v for k, v in a.items()}
