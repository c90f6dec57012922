"""Truncated cohomology of Sullivan algebras with exact sparse linear algebra.

The cochain complex is cut into codegrees ``C^n = span(basis(n))``.  The job
for codegree ``n`` row-reduces the images ``d(m)`` of the monomials of
``C^n``, giving ``rank d_n``, the cocycles ``Z^n`` and an echelon basis of the
boundaries ``B^{n+1}``; jobs are independent and may run in parallel.
Representatives of ``H^n`` are the reduced echelon basis of ``Z^n`` modulo
``B^n`` with respect to the canonical monomial order, so they are the same on
every run.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DegreeError, PreconditionError, RangeError
from .gca import GeneratorSet, Monomial, Poly, basis
from .linalg import (
    Echelon,
    SparseRationalMatrix,
    Vector,
    annihilator,
    bareiss_rank,
    dot,
    echelonize,
    image_and_kernel,
    integer_row,
    rref,
    solve,
)
from .model import SullivanAlgebra


# -- cochain coordinates -----------------------------------------------------

_index_cache: Dict[Tuple[GeneratorSet, int], Dict[Monomial, int]] = {}


def monomial_index(gens: GeneratorSet, n: int) -> Dict[Monomial, int]:
    key = (gens, n)
    idx = _index_cache.get(key)
    if idx is None:
        idx = {m: i for i, m in enumerate(basis(n, gens))}
        _index_cache[key] = idx
    return idx


def to_vector(p: Poly, n: int) -> Vector:
    idx = monomial_index(p.gens, n)
    try:
        return {idx[m]: c for m, c in p.terms.items()}
    except KeyError:
        raise DegreeError(f"{p} is not homogeneous of codegree {n}") from None


def from_vector(vec: Vector, gens: GeneratorSet, n: int) -> Poly:
    mons = basis(n, gens)
    return Poly(gens, {mons[i]: c for i, c in vec.items()})


def differential_images(A: SullivanAlgebra, n: int) -> List[Vector]:
    """``d(m)`` for each monomial ``m`` of ``C^n``, in ``C^{n+1}`` coordinates."""
    idx = monomial_index(A.gens, n + 1)
    return [
        {idx[m]: c for m, c in A.d_monomial(mono).items()} for mono in basis(n, A.gens)
    ]


def differential_matrix(A: SullivanAlgebra, n: int) -> SparseRationalMatrix:
    """Matrix of ``d: C^n -> C^{n+1}`` (columns indexed by ``basis(n)``)."""
    return SparseRationalMatrix.from_columns(
        differential_images(A, n), len(basis(n + 1, A.gens))
    )


@dataclass
class _Job:
    n: int
    rank: int
    boundaries_above: Echelon  # B^{n+1} inside C^{n+1}
    cocycles: Optional[List[Vector]]  # Z^n inside C^n, when tracked


def _codegree_job(A: SullivanAlgebra, n: int, track: bool) -> _Job:
    images = differential_images(A, n)
    target_dim = len(basis(n + 1, A.gens))
    if track:
        image, kernel = image_and_kernel(images, target_dim)
        return _Job(n, image.rank, image, kernel)
    rows = [integer_row(v)[1] for v in images if v]
    pivots, _ = echelonize(rows, target_dim)
    return _Job(n, len(pivots), Echelon(pivots, target_dim), None)


def _job_entry(args):
    A, n, track = args
    return _codegree_job(A, n, track)


# -- cohomology table ----------------------------------------------------------


class CohomologyTable:
    """``H^n(ΛV, d)`` for ``0 <= n <= max_codegree``.

    ``dims[n]`` and ``ranks[n]`` (rank of ``d: C^n -> C^{n+1}``) are computed
    eagerly; representatives on first use.
    """

    def __init__(self, algebra: SullivanAlgebra, max_codegree: int, jobs: Dict[int, _Job]):
        self.algebra = algebra
        self.max_codegree = max_codegree
        self._jobs = jobs
        self.ranks = [jobs[n].rank for n in range(max_codegree + 1)]
        self.dims = []
        for n in range(max_codegree + 1):
            below = self.ranks[n - 1] if n else 0
            self.dims.append(len(basis(n, algebra.gens)) - self.ranks[n] - below)
        self._reps: Dict[int, Tuple[List[Vector], List[int]]] = {}

    def __repr__(self):
        return f"CohomologyTable({self.algebra.name}, dims={self.dims})"

    def dim(self, n: int) -> int:
        self._check_range(n)
        return self.dims[n]

    def _check_range(self, n: int):
        if n < 0 or n > self.max_codegree:
            raise RangeError(f"codegree {n} outside the computed window [0, {self.max_codegree}]")

    def boundaries(self, n: int) -> Echelon:
        self._check_range(n)
        if n == 0:
            return Echelon({}, 1)
        return self._jobs[n - 1].boundaries_above

    def cocycles(self, n: int) -> List[Vector]:
        self._check_range(n)
        job = self._jobs[n]
        if job.cocycles is None:
            job = _codegree_job(self.algebra, n, track=True)
            self._jobs[n] = job
        return job.cocycles

    def _rep_data(self, n: int):
        if n not in self._reps:
            B = self.boundaries(n)
            reduced = []
            for z in self.cocycles(n):
                _, r = B.reduce(z)
                if r:
                    reduced.append(r)
            reps = rref(reduced, len(basis(n, self.algebra.gens)))
            assert len(reps) == self.dims[n], "representatives disagree with the rank count"
            pivots = [min(r) for r in reps]
            self._reps[n] = (reps, pivots)
        return self._reps[n]

    def representatives(self, n: int) -> List[Poly]:
        reps, _ = self._rep_data(n)
        return [from_vector(r, self.algebra.gens, n) for r in reps]

    def class_coordinates(self, z: Poly) -> List[Fraction]:
        """Coordinates of the class of the cocycle ``z`` in the representative basis."""
        n = z.codegree
        if n is None:
            return []
        self._check_range(n)
        if not self.algebra.is_cocycle(z):
            raise PreconditionError(f"{z} is not a cocycle")
        reps, pivots = self._rep_data(n)
        scale, r = self.boundaries(n).reduce(to_vector(z, n))
        coords = [r.get(p, Fraction(0)) / scale for p in pivots]
        rest = dict(r)
        for c, rep in zip(coords, reps):
            for k, v in rep.items():
                x = rest.get(k, 0) - c * scale * v
                if x:
                    rest[k] = x
                else:
                    rest.pop(k, None)
        assert not rest, "cocycle not spanned by representatives and boundaries"
        return coords

    def class_poly(self, n: int, coords: Sequence[Fraction]) -> Poly:
        out = Poly.zero(self.algebra.gens)
        for c, rep in zip(coords, self.representatives(n)):
            out = out + rep.scale(c)
        return out

    def is_zero_class(self, z: Poly) -> bool:
        return not any(self.class_coordinates(z))

    def hilbert_series(self):
        from .series import LaurentSeries

        return LaurentSeries(dict(enumerate(self.dims)), 0, self.max_codegree)


def cohomology(
    A: SullivanAlgebra,
    max_codegree: int,
    representatives: bool = True,
    jobs: int = 1,
) -> CohomologyTable:
    """Exact cohomology of ``A`` through codegree ``max_codegree``.

    With ``jobs > 1`` the per-codegree eliminations run in worker processes
    and are assembled here once all of them finish.
    """
    if max_codegree < 0:
        raise RangeError("max_codegree must be non-negative")
    degrees = range(max_codegree + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job_entry, [(A, n, representatives) for n in degrees]))
    else:
        results = [_codegree_job(A, n, representatives) for n in degrees]
    return CohomologyTable(A, max_codegree, {job.n: job for job in results})


def dense_cohomology_dims(A: SullivanAlgebra, max_codegree: int) -> List[int]:
    """Reference dimensions from dense Bareiss elimination of each ``d_n``."""
    ranks = []
    for n in range(max_codegree + 1):
        ranks.append(bareiss_rank(differential_matrix(A, n).to_dense()))
    return [
        len(basis(n, A.gens)) - ranks[n] - (ranks[n - 1] if n else 0)
        for n in range(max_codegree + 1)
    ]


# -- coboundaries -------------------------------------------------------------


@dataclass
class Refusal:
    """Certificate that ``target`` is not in the image of ``d`` (restricted to ``source``).

    ``functional`` (monomial -> coefficient) vanishes on ``d(m)`` for every
    monomial ``m`` of the source and is nonzero on the target.
    """

    target: Poly
    functional: Dict[Monomial, Fraction]
    source: List[Monomial] = field(default_factory=list)

    def __bool__(self):
        return False

    def pairing(self, p: Poly) -> Fraction:
        return sum((c * p.coefficient(m) for m, c in self.functional.items()), Fraction(0))

    def verify(self, A: SullivanAlgebra) -> bool:
        if not self.pairing(self.target):
            return False
        for m in self.source:
            dm = A.extend_differential(Poly.monomial(A.gens, m))
            if self.pairing(dm):
                return False
        return True


def _solve_d(A: SullivanAlgebra, f: Poly, source: List[Monomial]):
    n = f.codegree
    idx = monomial_index(A.gens, n)
    images = [{idx[m]: c for m, c in A.d_monomial(mono).items()} for mono in source]
    target = {idx[m]: c for m, c in f.terms.items()}
    coeffs = solve(images, target, len(idx))
    if coeffs is not None:
        return Poly(A.gens, {source[j]: c for j, c in coeffs.items()})
    phi = annihilator(images, target, len(idx))
    mons = basis(n, A.gens)
    return Refusal(f, {mons[k]: v for k, v in phi.items()}, list(source))


def is_coboundary(A: SullivanAlgebra, f: Poly):
    """Return ``g`` with ``d(g) = f``, or a :class:`Refusal` when ``[f] != 0``."""
    f = A.poly(f)
    if not f.terms:
        return Poly.zero(A.gens)
    if not f.is_homogeneous():
        raise DegreeError(f"{f} is not homogeneous")
    if not A.is_cocycle(f):
        raise PreconditionError(f"{f} is not a cocycle")
    return _solve_d(A, f, basis(f.codegree - 1, A.gens))


def cup_product(A: SullivanAlgebra, table: CohomologyTable, alpha: Poly, beta: Poly):
    """Coordinates of ``[alpha]*[beta]`` in the representative basis."""
    alpha, beta = A.poly(alpha), A.poly(beta)
    if not (alpha.terms and beta.terms):
        raise DegreeError("the zero element has no codegree; pass nonzero representatives")
    degs = [p.codegree for p in (alpha, beta)]
    total = sum(degs)
    if total > table.max_codegree:
        raise RangeError(f"product lands in codegree {total} > {table.max_codegree}")
    for p in (alpha, beta):
        if p.terms and not A.is_cocycle(p):
            raise PreconditionError(f"{p} is not a cocycle")
    prod = alpha * beta
    if not prod.terms:
        return [Fraction(0)] * table.dim(total)
    return table.class_coordinates(prod)


# -- dual Hurewicz --------------------------------------------------------------


def decomposable_basis(n: int, gens: GeneratorSet) -> List[Monomial]:
    return [m for m in basis(n, gens) if sum(m) >= 2]


@dataclass
class HurewiczImage:
    """Generators of codegree ``n`` (as combinations) lying in the image of h^∨.

    Each entry of ``basis`` is ``(combination, witness)`` with
    ``d(combination + witness) == 0`` and ``witness`` decomposable.
    """

    n: int
    generators: List[str]
    basis: List[Tuple[Dict[str, Fraction], Poly]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_surjective(self) -> bool:
        return self.dimension == len(self.generators)

    def verify(self, A: SullivanAlgebra) -> bool:
        for combo, g in self.basis:
            x = sum((A.generator(k).scale(c) for k, c in combo.items()), Poly.zero(A.gens))
            if A.extend_differential(x + g).terms:
                return False
        return True


def hurewicz_image(A: SullivanAlgebra, n: int) -> HurewiczImage:
    if n < 2:
        raise RangeError("the dual Hurewicz image is only defined for n >= 2")
    names = [g.name for g in A.gens if g.codegree == n]
    decs = decomposable_basis(n, A.gens)
    idx = monomial_index(A.gens, n + 1)
    k = len(names)
    images = [{idx[m]: c for m, c in A.d(x).terms.items()} for x in names]
    images += [{idx[m]: c for m, c in A.d_monomial(mono).items()} for mono in decs]
    _, kernel = image_and_kernel(images, len(idx))
    # keep the generator part in reduced echelon form, carrying witnesses along
    rows = []
    for vec in kernel:
        kpart = {j: c for j, c in vec.items() if j < k}
        if kpart:
            rows.append(vec)
    out = []
    if rows:
        # reduced echelon form on the generator coordinates (columns 0..k-1)
        full = rref(rows, k + len(decs))
        for vec in full:
            combo = {names[j]: c for j, c in vec.items() if j < k}
            if not combo:
                continue
            g = Poly(A.gens, {decs[j - k]: c for j, c in vec.items() if j >= k})
            out.append((combo, g))
    return HurewiczImage(n, names, out)


def hurewicz_witness(A: SullivanAlgebra, x: str):
    """Decomposable ``g`` with ``d(x + g) = 0``, or a :class:`Refusal` for ``d(x)``.

    The refusal's functional kills ``d`` of every decomposable monomial of
    codegree ``|x|`` and is nonzero on ``-d(x)``.
    """
    n = A.gens[x].codegree
    dx = A.d(x)
    if not dx.terms:
        return Poly.zero(A.gens)
    return _solve_d(A, -dx, decomposable_basis(n, A.gens))


# -- presentations ----------------------------------------------------------------


@dataclass
class TruncatedPresentation:
    """Generators and relations of ``H^*`` through ``max_codegree``.

    ``relations`` are minimal generators of the kernel of ``Λ(ring generators)
    -> H^*``; ``odd_squares`` lists the squares of odd ring generators, which
    vanish for graded-commutativity reasons alone.  ``stable`` means nothing
    new appeared in the top window (a heuristic, not a proof of finite
    generation).
    """

    algebra_name: str
    max_codegree: int
    window: int
    ring_gens: GeneratorSet
    representatives: Dict[str, Poly]
    relations: List[Poly]
    odd_squares: List[Poly]
    stable: bool

    @property
    def generator_codegrees(self) -> List[int]:
        return [g.codegree for g in self.ring_gens]

    def all_relations(self) -> List[Poly]:
        return list(self.relations) + list(self.odd_squares)


def _ring_generator_name(rep: Poly, n: int, taken: set, count: int) -> str:
    if len(rep.terms) == 1:
        (mono, _), = rep.terms.items()
        if sum(mono) == 1:
            name = rep.gens.generators[mono.index(1)].name
            if name not in taken:
                return name
    name = f"h{n}" if count == 0 else f"h{n}_{count}"
    while name in taken:
        name += "'"
    return name


def presentation(A: SullivanAlgebra, table: CohomologyTable, max_codegree: Optional[int] = None):
    from .gca import Generator

    top = table.max_codegree if max_codegree is None else max_codegree
    if top > table.max_codegree:
        raise RangeError(f"table only reaches codegree {table.max_codegree}")
    ring: List[Generator] = []
    reps: Dict[str, Poly] = {}
    relations: List[Poly] = []
    new_at: List[int] = []
    for n in range(1, top + 1):
        gens = GeneratorSet(ring)
        dimH = table.dim(n)
        decs = [m for m in basis(n, gens) if sum(m) >= 2] if ring else []
        images = []
        for mono in decs:
            prod = Poly.one(A.gens)
            for g, e in zip(gens.generators, mono):
                for _ in range(e):
                    prod = prod * reps[g.name]
            images.append(
                {i: c for i, c in enumerate(table.class_coordinates(prod)) if c}
                if prod.terms else {}
            )
        span, kernel = image_and_kernel(images, dimH)
        # new ring generators: representatives outside the decomposable span
        chosen = Echelon(dict(span.pivots), dimH)
        count = 0
        taken = {g.name for g in ring}
        new_gens = []
        for i in range(dimH):
            e = {i: Fraction(1)}
            if not chosen.contains(e):
                rows = list(chosen.pivots.values()) + [integer_row(e)[1]]
                pivots, _ = echelonize(rows, dimH)
                chosen = Echelon(pivots, dimH)
                rep = table.representatives(n)[i]
                name = _ring_generator_name(rep, n, taken, count)
                taken.add(name)
                count += 1
                new_gens.append((Generator(name, n), rep))
        # new relations: kernel modulo the ideal of earlier relations
        before = len(relations)
        if kernel:
            ideal = []
            for r in relations:
                rr = r.transport(gens)
                for mono in basis(n - r.codegree, gens):
                    prod = rr * Poly.monomial(gens, mono)
                    if prod.terms:
                        ideal.append({decs.index(m): c for m, c in prod.terms.items()})
            ideal_ech = Echelon.from_vectors(ideal, len(decs))
            reduced = [r for r in (ideal_ech.reduce(v)[1] for v in kernel) if r]
            for vec in rref(reduced, len(decs)):
                relations.append(Poly(gens, {decs[j]: c for j, c in vec.items()}))
        if new_gens or len(relations) > before:
            new_at.append(n)
        for g, rep in new_gens:
            ring.append(g)
            reps[g.name] = rep
    final = GeneratorSet(ring)
    relations = [r.transport(final) for r in relations]
    odd_squares = [
        _formal_square(final, g.name) for g in final if g.odd and 2 * g.codegree <= top
    ]
    window = A.top_codegree
    stable = not any(n > top - window for n in new_at)
    return TruncatedPresentation(A.name, top, window, final, reps, relations, odd_squares, stable)


class _SquareRelation(Poly):
    """The formal square ``g^2`` of an odd ring generator, printed as such."""

    __slots__ = ("name",)

    def __str__(self):
        return f"{self.name}^2"


def _formal_square(gens: GeneratorSet, name: str) -> Poly:
    p = _SquareRelation.__new__(_SquareRelation)
    p.gens = gens
    p.terms = {}
    p.name = name
    return p
