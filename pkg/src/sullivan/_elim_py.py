"""Pure-Python sparse fraction-free elimination over the integers.

Rows are lists of ``(column, value)`` pairs sorted by column with nonzero
integer values.  Columns at or beyond ``stop`` are bookkeeping (for example an
identity block tracking row operations) and are never used as pivots.

This module and the compiled ``_elim`` extension expose the same two
functions; :mod:`sullivan.linalg` picks one at import time.
"""

from fractions import Fraction
from math import gcd

BACKEND = "python"


def _primitive(row):
    if not row:
        return row
    g = 0
    for _, v in row:
        g = gcd(g, v)
        if g == 1:
            break
    if row[0][1] < 0:
        g = -g
    if g == 1:
        return row
    return [(c, v // g) for c, v in row]


def _combine(a, b, ca, cb):
    """Return ``ca*a - cb*b`` for sorted sparse rows."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ka, va = a[i]
        kb, vb = b[j]
        if ka < kb:
            out.append((ka, ca * va))
            i += 1
        elif kb < ka:
            out.append((kb, -cb * vb))
            j += 1
        else:
            v = ca * va - cb * vb
            if v:
                out.append((ka, v))
            i += 1
            j += 1
    while i < na:
        ka, va = a[i]
        out.append((ka, ca * va))
        i += 1
    while j < nb:
        kb, vb = b[j]
        out.append((kb, -cb * vb))
        j += 1
    return out


def echelonize(rows, stop, ordered=False):
    """Row-reduce ``rows`` to echelon form.

    Returns ``(pivots, zero_rows)``: ``pivots`` maps each pivot column to the
    primitive row whose leading column it is; ``zero_rows`` holds the reduced
    rows whose entries left of ``stop`` all vanished.  Unless ``ordered`` is
    set, rows are processed by leading column with sparser rows first.
    """
    if not ordered:
        rows = sorted(rows, key=lambda r: (r[0][0] if r else -1, len(r)))
    pivots = {}
    zero_rows = []
    for r in rows:
        r = _primitive(list(r))
        while r and r[0][0] < stop:
            c, v = r[0]
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                break
            r = _primitive(_combine(r, p, p[0][1], v))
        else:
            zero_rows.append(r)
    return pivots, zero_rows


def reduce_full(row, pivots, stop):
    """Eliminate every pivot column of ``row``.

    Returns ``(scale, reduced)`` with ``reduced == scale*row`` modulo the span
    of the pivot rows; ``scale`` is a nonzero Fraction.
    """
    scale = Fraction(1)
    r = list(row)
    i = 0
    while i < len(r):
        c, v = r[i]
        if c >= stop:
            break
        p = pivots.get(c)
        if p is None:
            i += 1
            continue
        lead = p[0][1]
        r = _combine(r, p, lead, v)
        scale *= lead
        g = 0
        for _, x in r:
            g = gcd(g, x)
        if g > 1:
            r = [(k, x // g) for k, x in r]
            scale /= g
    return scale, r
