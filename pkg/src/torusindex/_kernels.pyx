# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled sparse Laurent polynomial kernels (see ``_kernels_py`` for the contract).

``mul`` runs in machine integers with overflow detection and retries in
Python ints when any intermediate overflows int64.
"""

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.pair cimport pair

from torusindex._kernels_py import (
    FIELD_BITS, BIAS, NVARS, KEY_OFFSET, pack, unpack,
    add, scale, content, divexact, shift,
    mul as _mul_py,
)

BACKEND = "cython"

cdef extern from *:
    """
    static inline int ti_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ti_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int ti_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int ti_mul_ovf(long long a, long long b, long long *r) nogil
    int ti_add_ovf(long long a, long long b, long long *r) nogil
    int ti_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long C_OFFSET = KEY_OFFSET


cdef int _load(dict a, vector[long long]& ks, vector[long long]& rs,
               vector[long long]& js) except -1:
    cdef long long k, r, i
    for key, val in a.items():
        try:
            k = key
            r = val[0]
            i = val[1]
        except OverflowError:
            return 1
        ks.push_back(k)
        rs.push_back(r)
        js.push_back(i)
    return 0


cdef int _mul_fast(vector[long long]& ka, vector[long long]& ra, vector[long long]& ia,
                   vector[long long]& kb, vector[long long]& rb, vector[long long]& ib,
                   unordered_map[long long, pair[long long, long long]]& out) nogil:
    cdef size_t x, y
    cdef long long k, p1, p2, cr, ci
    cdef pair[long long, long long]* slot
    for x in range(ka.size()):
        for y in range(kb.size()):
            k = ka[x] + kb[y] - C_OFFSET
            if ti_mul_ovf(ra[x], rb[y], &p1) or ti_mul_ovf(ia[x], ib[y], &p2):
                return 1
            if ti_sub_ovf(p1, p2, &cr):
                return 1
            if ti_mul_ovf(ra[x], ib[y], &p1) or ti_mul_ovf(ia[x], rb[y], &p2):
                return 1
            if ti_add_ovf(p1, p2, &ci):
                return 1
            slot = &out[k]
            if ti_add_ovf(slot.first, cr, &slot.first):
                return 1
            if ti_add_ovf(slot.second, ci, &slot.second):
                return 1
    return 0


def mul(dict a, dict b):
    cdef vector[long long] ka, ra, ia, kb, rb, ib
    cdef unordered_map[long long, pair[long long, long long]] out
    if not a or not b:
        return {}
    if _load(a, ka, ra, ia) or _load(b, kb, rb, ib):
        return _mul_py(a, b)
    out.reserve(ka.size() * kb.size())
    if _mul_fast(ka, ra, ia, kb, rb, ib, out):
        return _mul_py(a, b)
    res = {}
    for item in out:
        if item.second.first != 0 or item.second.second != 0:
            res[item.first] = (item.second.first, item.second.second)
    return res
