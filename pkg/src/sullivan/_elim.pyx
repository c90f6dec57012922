# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled sparse fraction-free elimination on int64 entries.

Same contract as ``_elim_py``.  Any intermediate value that does not fit in a
signed 64-bit integer raises OverflowError; the caller then reruns the call
on the arbitrary-precision Python path.
"""

from fractions import Fraction

from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.unordered_map cimport unordered_map

ctypedef long long i64
ctypedef pair[int, i64] entry
ctypedef vector[entry] row_t

BACKEND = "compiled"

cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int mul_ovf(i64 a, i64 b, i64 *r) nogil
    int sub_ovf(i64 a, i64 b, i64 *r) nogil


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _primitive(row_t &r) except -1:
    cdef i64 g = 0
    cdef size_t k
    if r.size() == 0:
        return 0
    for k in range(r.size()):
        g = _gcd(g, r[k].second)
        if g == 1:
            break
    if r[0].second < 0:
        g = -g
    if g != 1:
        for k in range(r.size()):
            r[k].second = r[k].second // g
    return 0


cdef int _combine(const row_t &a, const row_t &b, i64 ca, i64 cb, row_t &out) except -1:
    # out = ca*a - cb*b
    cdef size_t i = 0, j = 0
    cdef size_t na = a.size(), nb = b.size()
    cdef i64 x, y, v
    out.clear()
    out.reserve(na + nb)
    while i < na and j < nb:
        if a[i].first < b[j].first:
            if mul_ovf(ca, a[i].second, &x):
                raise OverflowError
            out.push_back(entry(a[i].first, x))
            i += 1
        elif b[j].first < a[i].first:
            if mul_ovf(cb, b[j].second, &y):
                raise OverflowError
            if sub_ovf(0, y, &v):
                raise OverflowError
            out.push_back(entry(b[j].first, v))
            j += 1
        else:
            if mul_ovf(ca, a[i].second, &x) or mul_ovf(cb, b[j].second, &y):
                raise OverflowError
            if sub_ovf(x, y, &v):
                raise OverflowError
            if v != 0:
                out.push_back(entry(a[i].first, v))
            i += 1
            j += 1
    while i < na:
        if mul_ovf(ca, a[i].second, &x):
            raise OverflowError
        out.push_back(entry(a[i].first, x))
        i += 1
    while j < nb:
        if mul_ovf(cb, b[j].second, &y):
            raise OverflowError
        if sub_ovf(0, y, &v):
            raise OverflowError
        out.push_back(entry(b[j].first, v))
        j += 1
    return 0


cdef row_t _to_row(object pyrow) except *:
    cdef row_t r
    cdef int c
    cdef i64 v
    r.reserve(len(pyrow))
    for c, v in pyrow:
        r.push_back(entry(c, v))
    return r


cdef list _to_py(const row_t &r):
    cdef size_t k
    return [(r[k].first, r[k].second) for k in range(r.size())]


def echelonize(rows, int stop, ordered=False):
    cdef vector[row_t] pivot_rows
    cdef unordered_map[int, size_t] pivot_of
    cdef row_t r, tmp
    cdef int c
    cdef i64 v, lead
    cdef size_t idx
    zero_rows = []
    if not ordered:
        rows = sorted(rows, key=lambda q: (q[0][0] if q else -1, len(q)))
    for pyrow in rows:
        r = _to_row(pyrow)
        _primitive(r)
        while True:
            if r.size() == 0 or r[0].first >= stop:
                zero_rows.append(_to_py(r))
                break
            c = r[0].first
            v = r[0].second
            if pivot_of.count(c) == 0:
                pivot_of[c] = pivot_rows.size()
                pivot_rows.push_back(r)
                break
            idx = pivot_of[c]
            lead = pivot_rows[idx][0].second
            _combine(r, pivot_rows[idx], lead, v, tmp)
            r.swap(tmp)
            _primitive(r)
    pivots = {}
    for idx in range(pivot_rows.size()):
        pivots[pivot_rows[idx][0].first] = _to_py(pivot_rows[idx])
    return pivots, zero_rows


def reduce_full(row, pivots, int stop):
    cdef row_t r = _to_row(row)
    cdef row_t p, tmp
    cdef size_t i = 0, k
    cdef int c
    cdef i64 v, lead, g
    scale = Fraction(1)
    while i < r.size():
        c = r[i].first
        if c >= stop:
            break
        prow = pivots.get(c)
        if prow is None:
            i += 1
            continue
        p = _to_row(prow)
        v = r[i].second
        lead = p[0].second
        _combine(r, p, lead, v, tmp)
        r.swap(tmp)
        scale *= lead
        g = 0
        for k in range(r.size()):
            g = _gcd(g, r[k].second)
        if g > 1:
            for k in range(r.size()):
                r[k].second = r[k].second // g
            scale /= g
    return scale, _to_py(r)
