"""Exact sparse linear algebra over Q.

Vectors are ``dict[int, Fraction]`` with no zero entries.  The elimination
kernel works on primitive integer rows; the compiled backend is used when it
imports and every intermediate fits in 64 bits, otherwise the pure-Python
kernel (arbitrary precision) takes over for that call.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from . import _elim_py

Vector = Dict[int, Fraction]

_compiled = None
if os.environ.get("SULLIVAN_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _elim as _compiled
    except ImportError:
        _compiled = None

_state = {"use_compiled": _compiled is not None}


def backend() -> str:
    return "compiled" if _state["use_compiled"] else "python"


def set_backend(name: str) -> None:
    """Select ``"compiled"`` or ``"python"`` (used by the benchmark)."""
    if name == "compiled" and _compiled is None:
        raise RuntimeError("the compiled kernel is not built; run `pip install -e .`")
    if name not in ("compiled", "python"):
        raise ValueError(name)
    _state["use_compiled"] = name == "compiled"


def echelonize(rows, stop: int, ordered: bool = False):
    if _state["use_compiled"]:
        try:
            return _compiled.echelonize(rows, stop, ordered)
        except OverflowError:
            pass
    return _elim_py.echelonize(rows, stop, ordered)


def reduce_full(row, pivots, stop: int):
    if _state["use_compiled"]:
        try:
            return _compiled.reduce_full(row, pivots, stop)
        except OverflowError:
            pass
    return _elim_py.reduce_full(row, pivots, stop)


def integer_row(vec: Vector, offset: int = 0) -> Tuple[int, list]:
    """Clear denominators: returns ``(k, row)`` with ``row == k*vec`` as sorted pairs."""
    k = 1
    for v in vec.values():
        if v.denominator != 1:
            k = lcm(k, v.denominator)
    return k, [(c + offset, int(v * k)) for c, v in sorted(vec.items())]


def _to_vector(row, stop=None, shift=0) -> Vector:
    return {c - shift: Fraction(v) for c, v in row if stop is None or c < stop}


class Echelon:
    """An echelon basis of a subspace of Q^n, with canonical reduction."""

    def __init__(self, pivots: dict, dim: int):
        self.pivots = pivots
        self.dim = dim

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vector], dim: int) -> "Echelon":
        rows = [integer_row(v)[1] for v in vectors if v]
        pivots, _ = echelonize(rows, dim)
        return cls(pivots, dim)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def pivot_columns(self) -> List[int]:
        return sorted(self.pivots)

    def reduce(self, vec: Vector) -> Tuple[Fraction, Vector]:
        """Normal form modulo the subspace: ``(s, r)`` with ``r == s*vec`` mod span."""
        if not vec:
            return Fraction(1), {}
        k, row = integer_row(vec)
        scale, out = reduce_full(row, self.pivots, self.dim)
        return scale * k, _to_vector(out)

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)[1]

    def basis(self) -> List[Vector]:
        return [_to_vector(self.pivots[c]) for c in sorted(self.pivots)]


def image_and_kernel(images: Sequence[Vector], target_dim: int):
    """Echelon basis of the span of ``images`` and a basis of the relations among them.

    ``images[j]`` is the image of the j-th source basis vector.  The kernel
    vectors are indexed by source position.
    """
    m = len(images)
    rows = []
    for j, vec in enumerate(images):
        k, row = integer_row(vec)
        row.append((target_dim + j, k))
        rows.append(row)
    pivots, zero_rows = echelonize(rows, target_dim)
    image = Echelon(
        {c: [(a, b) for a, b in r if a < target_dim] for c, r in pivots.items()}, target_dim
    )
    kernel = [_to_vector(r, shift=target_dim) for r in zero_rows]
    assert image.rank + len(kernel) == m, "rank + nullity must equal the column count"
    return image, kernel


def solve(images: Sequence[Vector], target: Vector, target_dim: int) -> Optional[Vector]:
    """Coefficients ``x`` with ``sum(x[j]*images[j]) == target``, or None."""
    if not target:
        return {}
    m = len(images)
    rows = []
    for j, vec in enumerate(images):
        k, row = integer_row(vec)
        if row:
            row.append((target_dim + j, k))
            rows.append(row)
    pivots, _ = echelonize(rows, target_dim)
    k, trow = integer_row(target)
    trow.append((target_dim + m, k))
    _, out = reduce_full(trow, pivots, target_dim)
    if out and out[0][0] < target_dim:
        return None
    special = dict(out)[target_dim + m]
    return {
        c - target_dim: Fraction(-v, special) for c, v in out if c < target_dim + m
    }


def annihilator(images: Sequence[Vector], target: Vector, target_dim: int) -> Optional[Vector]:
    """A functional vanishing on every image vector but not on ``target``.

    Returns None when ``target`` lies in the span of ``images``.
    """
    m = len(images)
    columns = [integer_row(v)[1] for v in images]
    transposed: Dict[int, list] = {k: [] for k in range(target_dim)}
    for j, col in enumerate(columns):
        for k, v in col:
            transposed[k].append((j, v))
    rows = [transposed[k] + [(m + k, 1)] for k in range(target_dim)]
    _, zero_rows = echelonize(rows, m)
    for r in zero_rows:
        phi = _to_vector(r, shift=m)
        if dot(phi, target):
            g = next(iter(sorted(phi.items())))[1]
            return {c: v / g for c, v in phi.items()}
    return None


def dot(a: Vector, b: Vector) -> Fraction:
    if len(a) > len(b):
        a, b = b, a
    return sum((v * b[c] for c, v in a.items() if c in b), Fraction(0))


def combine(coeffs: Dict[int, Fraction], vectors: Sequence[Vector]) -> Vector:
    out: Vector = {}
    for j, c in coeffs.items():
        for k, v in vectors[j].items():
            x = out.get(k, 0) + c * v
            if x:
                out[k] = x
            else:
                out.pop(k, None)
    return out


def rref(vectors: Sequence[Vector], dim: int) -> List[Vector]:
    """Reduced row echelon basis of the span (leading entries 1), ordered by pivot."""
    ech = Echelon.from_vectors(vectors, dim)
    out = []
    for c in sorted(ech.pivots):
        rest = {p: r for p, r in ech.pivots.items() if p != c}
        _, row = reduce_full(ech.pivots[c], rest, dim)
        vec = _to_vector(row)
        lead = vec[c]
        out.append({k: v / lead for k, v in vec.items()})
    return out


class SparseRationalMatrix:
    """Sparse matrix over Q stored by rows; ``rows[i]`` maps column -> value."""

    def __init__(self, nrows: int, ncols: int, rows: Optional[Dict[int, Vector]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: Dict[int, Vector] = {}
        for i, row in (rows or {}).items():
            clean = {j: Fraction(v) for j, v in row.items() if v}
            if clean:
                self.rows[i] = clean

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int) -> "SparseRationalMatrix":
        rows: Dict[int, Vector] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), rows)

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [{} for _ in range(self.ncols)]
        for i, row in self.rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, Fraction(0))

    def to_dense(self) -> List[List[Fraction]]:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def apply(self, x: Vector) -> Vector:
        out = {}
        for i, row in self.rows.items():
            v = dot(row, x)
            if v:
                out[i] = v
        return out

    def rank(self) -> int:
        image, _ = image_and_kernel(self.columns(), self.nrows)
        return image.rank

    def nullspace(self) -> List[Vector]:
        _, kernel = image_and_kernel(self.columns(), self.nrows)
        return kernel

    def solve(self, b: Vector) -> Optional[Vector]:
        return solve(self.columns(), b, self.nrows)


def bareiss_rank(matrix: Sequence[Sequence]) -> int:
    """Rank by dense fraction-free (Bareiss) elimination.

    Independent of the sparse kernel; used as the reference oracle.
    """
    rows = []
    for r in matrix:
        den = 1
        for v in r:
            den = lcm(den, Fraction(v).denominator)
        rows.append([int(Fraction(v) * den) for v in r])
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    prev = 1
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][c]
        for i in range(rank + 1, nrows):
            f = rows[i][c]
            ri = rows[i]
            pr = rows[rank]
            for j in range(c + 1, ncols):
                ri[j] = (ri[j] * p - f * pr[j]) // prev
            ri[c] = 0
        prev = p
        rank += 1
    return rank
