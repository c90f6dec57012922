"""Sullivan algebras (free graded-commutative DGAs over Q) and rewriting moves.

A :class:`SullivanAlgebra` stores ``d`` on generators only; ``d`` of a product
comes from the Leibniz rule ``d(ab) = d(a)b + (-1)^|a| a d(b)`` and is
memoized per monomial.  Moves never mutate their input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DegreeError, PreconditionError, ShapeError, StructuralError, ValidationError
from .gca import Generator, GeneratorSet, Monomial, Poly, mono_mul, substitute

PolyLike = Union[Poly, str, int]


class SullivanAlgebra:
    """``(ΛV, d)`` on a finite list of generators of codegree >= 2."""

    def __init__(
        self,
        generators: Union[GeneratorSet, Iterable[Generator]],
        differential: Optional[Mapping[str, PolyLike]] = None,
        name: str = "A",
    ):
        gens = generators if isinstance(generators, GeneratorSet) else GeneratorSet(generators)
        self.gens = gens
        self.name = name
        dgen: List[Poly] = [Poly.zero(gens) for _ in gens]
        for gname, value in (differential or {}).items():
            if gname not in gens:
                raise StructuralError(f"differential assigned to unknown generator {gname!r}")
            p = _coerce_poly(value, gens)
            g = gens[gname]
            if p.terms:
                if not p.is_homogeneous() or p.codegree != g.codegree + 1:
                    raise DegreeError(
                        f"d({gname}) = {p} must be homogeneous of codegree {g.codegree + 1}"
                    )
            dgen[gens.index[gname]] = p
        self._dgen = tuple(dgen)
        self._cache: Dict[Monomial, Dict[Monomial, Fraction]] = {}

    @classmethod
    def build(
        cls,
        generators: Sequence[Tuple[str, int]],
        differential: Optional[Mapping[str, PolyLike]] = None,
        name: str = "A",
    ) -> "SullivanAlgebra":
        """Convenience constructor: ``build([("v", 2), ("x", 3)], {"w": "v*x"})``."""
        return cls([Generator(n, d) for n, d in generators], differential, name)

    # -- basic access -------------------------------------------------------

    def d(self, name: str) -> Poly:
        return self._dgen[self.gens.index[name]]

    @property
    def differential(self) -> Dict[str, Poly]:
        return {g.name: p for g, p in zip(self.gens, self._dgen) if p.terms}

    @property
    def generators(self) -> Tuple[Generator, ...]:
        return self.gens.generators

    def generator(self, name: str) -> Poly:
        return Poly.generator(self.gens, name)

    def poly(self, value: PolyLike) -> Poly:
        return _coerce_poly(value, self.gens)

    @property
    def even_generators(self) -> List[Generator]:
        return [g for g in self.gens if not g.odd]

    @property
    def odd_generators(self) -> List[Generator]:
        return [g for g in self.gens if g.odd]

    @property
    def top_codegree(self) -> int:
        return max((g.codegree for g in self.gens), default=0)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        if not isinstance(other, SullivanAlgebra):
            return NotImplemented
        return self.gens == other.gens and self._dgen == other._dgen

    def __hash__(self):
        return hash((self.gens, self._dgen))

    def __repr__(self):
        gens = ", ".join(f"{g.name}{g.codegree}" for g in self.gens)
        diffs = ", ".join(f"d{n}={p}" for n, p in self.differential.items()) or "d=0"
        return f"SullivanAlgebra({self.name}: Λ({gens}), {diffs})"

    def with_name(self, name: str) -> "SullivanAlgebra":
        return SullivanAlgebra(self.gens, self.differential, name)

    def to_text(self) -> str:
        """Serialize in the model-file language."""
        lines = [f"algebra {self.name}"]
        lines += [f"gen {g.name} {g.codegree}" for g in self.gens]
        lines += [f"d {n} = {p}" for n, p in self.differential.items()]
        return "\n".join(lines) + "\n"

    # -- differential -------------------------------------------------------

    def d_monomial(self, mono: Monomial) -> Dict[Monomial, Fraction]:
        cached = self._cache.get(mono)
        if cached is not None:
            return cached
        gens = self.gens
        odd = gens.odd_indices
        out: Dict[Monomial, Fraction] = {}
        parity = 0
        for i, e in enumerate(mono):
            if not e:
                continue
            dg = self._dgen[i]
            if dg.terms:
                # m = L * g^e * R  ->  (-1)^|L| * e * (L g^(e-1)) * dg * R
                left = tuple(x if j < i else (e - 1 if j == i else 0) for j, x in enumerate(mono))
                right = tuple(x if j > i else 0 for j, x in enumerate(mono))
                coeff = -e if parity else e
                for mt, ct in dg.terms.items():
                    s1, m1 = mono_mul(left, mt, odd)
                    if not s1:
                        continue
                    s2, m2 = mono_mul(m1, right, odd)
                    if not s2:
                        continue
                    v = out.get(m2, 0) + s1 * s2 * coeff * ct
                    if v:
                        out[m2] = v
                    else:
                        out.pop(m2, None)
            if gens.codegrees[i] % 2:
                parity ^= e & 1
        self._cache[mono] = out
        return out

    def extend_differential(self, p: Poly) -> Poly:
        if p.gens != self.gens:
            raise StructuralError("element does not live in this algebra")
        out: Dict[Monomial, Fraction] = {}
        for mono, c in p.terms.items():
            for m, v in self.d_monomial(mono).items():
                x = out.get(m, 0) + c * v
                if x:
                    out[m] = x
                else:
                    out.pop(m, None)
        return Poly._raw(self.gens, out)

    def is_cocycle(self, p: Poly) -> bool:
        return not self.extend_differential(p).terms

    # -- structural flags ---------------------------------------------------

    @property
    def is_minimal(self) -> bool:
        return all(
            p.min_word_length() is None or p.min_word_length() >= 2 for p in self._dgen
        )

    @property
    def is_pure(self) -> bool:
        for g, p in zip(self.gens, self._dgen):
            if not g.odd and p.terms:
                return False
            if g.odd and any(m[i] for m in p.terms for i in self.gens.odd_indices):
                return False
        return True

    @property
    def even_cocycle_only(self) -> bool:
        """True when d vanishes on every even generator."""
        return all(not p.terms for g, p in zip(self.gens, self._dgen) if not g.odd)

    def validate(self) -> "ValidationReport":
        problems: List[Tuple[str, str]] = []
        d2_zero = True
        for g, p in zip(self.gens, self._dgen):
            dd = self.extend_differential(p)
            if dd.terms:
                d2_zero = False
                problems.append((g.name, f"d(d({g.name})) = {dd} != 0"))
        minimal = True
        for g, p in zip(self.gens, self._dgen):
            wl = p.min_word_length()
            if wl is not None and wl < 2:
                minimal = False
                problems.append((g.name, f"d({g.name}) = {p} has a linear term (not minimal)"))
        simply_connected = all(g.codegree >= 2 for g in self.gens)
        return ValidationReport(
            valid=d2_zero and minimal and simply_connected,
            d_squared_zero=d2_zero,
            minimal=minimal,
            simply_connected=simply_connected,
            pure=self.is_pure,
            even_cocycle_only=self.even_cocycle_only,
            problems=problems,
        )

    def check(self) -> "SullivanAlgebra":
        report = self.validate()
        if not report.valid:
            raise ValidationError(
                "invalid Sullivan algebra: " + "; ".join(msg for _, msg in report.problems),
                report,
            )
        return self

    def subalgebra(self, names: Iterable[str], name: Optional[str] = None) -> "SullivanAlgebra":
        """The sub-DGA on the given generators; their differentials must stay inside it."""
        keep = set(names)
        gens = GeneratorSet(g for g in self.gens if g.name in keep)
        diffs = {}
        for g in gens:
            try:
                diffs[g.name] = self.d(g.name).transport(gens)
            except StructuralError:
                raise PreconditionError(
                    f"d({g.name}) leaves the requested subalgebra", witness=g.name
                ) from None
        return SullivanAlgebra(gens, diffs, name or self.name)

    def below(self, codegree: int) -> "SullivanAlgebra":
        """Sub-DGA on the generators of codegree strictly below ``codegree``."""
        return self.subalgebra(g.name for g in self.gens if g.codegree < codegree)


@dataclass
class ValidationReport:
    valid: bool
    d_squared_zero: bool
    minimal: bool
    simply_connected: bool
    pure: bool
    even_cocycle_only: bool
    problems: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def offenders(self) -> List[str]:
        return [g for g, _ in self.problems]


@dataclass(frozen=True)
class IsoRecord:
    """Generator ``new`` stands for ``old + g``; replaying it reproduces the move."""

    old: str
    new: str
    g: Poly


def _coerce_poly(value: PolyLike, gens: GeneratorSet) -> Poly:
    if isinstance(value, Poly):
        if value.gens != gens:
            return value.transport(gens)
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(gens, value)
    if isinstance(value, str):
        from .parser import parse_poly

        return parse_poly(value, gens)
    raise TypeError(f"cannot interpret {value!r} as an element")


def extend_differential(A: SullivanAlgebra, p: Poly) -> Poly:
    return A.extend_differential(p)


def validate(A: SullivanAlgebra) -> ValidationReport:
    return A.validate()


def _assert_d2(A: SullivanAlgebra) -> SullivanAlgebra:
    for g in A.gens:
        if A.extend_differential(A.d(g.name)).terms:
            raise StructuralError(f"move produced d^2 != 0 at {g.name}")
    return A


# -- moves ------------------------------------------------------------------


def quotient_even_cocycle(A: SullivanAlgebra, x: str) -> SullivanAlgebra:
    """Divide out an even generator that is a cocycle (first unravelling move)."""
    g = A.gens[x]
    if g.odd:
        raise PreconditionError(f"{x} is odd; only even cocycle generators can be divided out", x)
    if A.d(x).terms:
        raise PreconditionError(f"d({x}) = {A.d(x)} is not zero", x)
    zero = Poly.zero(A.gens)
    gens = A.gens.without(x)
    diffs = {
        h.name: substitute(A.d(h.name), x, zero).transport(gens)
        for h in A.gens if h.name != x
    }
    return _assert_d2(SullivanAlgebra(gens, diffs, A.name))


def adjoin_odd(
    A: SullivanAlgebra,
    f: PolyLike,
    name: Optional[str] = None,
    codegree: Optional[int] = None,
) -> SullivanAlgebra:
    """Adjoin an odd generator ``y`` with ``d(y) = f`` for an even cocycle ``f``.

    ``f`` may be a coboundary; callers that care (the unraveler) check that.
    For ``f == 0`` pass ``codegree`` to get a free odd sphere factor.
    """
    f = A.poly(f)
    if f.terms:
        if not f.is_homogeneous():
            raise DegreeError(f"{f} is not homogeneous")
        n = f.codegree
        if n % 2:
            raise PreconditionError(f"{f} has odd codegree {n}; an even cocycle is required")
        if not A.is_cocycle(f):
            raise PreconditionError(f"{f} is not a cocycle")
        if f.min_word_length() < 2:
            raise PreconditionError(f"{f} has linear terms; the result would not be minimal")
        if codegree is not None and codegree != n - 1:
            raise DegreeError(f"codegree {codegree} does not match d = {f}")
        codegree = n - 1
    elif codegree is None or codegree % 2 == 0:
        raise PreconditionError("adjoining against 0 needs an explicit odd codegree")
    name = name or A.gens.fresh_name()
    gens = A.gens.with_generator(Generator(name, codegree))
    diffs = {h: p.transport(gens) for h, p in A.differential.items()}
    diffs[name] = f.transport(gens)
    return _assert_d2(SullivanAlgebra(gens, diffs, A.name))


def occurrences(A: SullivanAlgebra, x: str) -> List[str]:
    """Generators other than ``x`` whose differential mentions ``x``."""
    return [g.name for g in A.gens if g.name != x and A.d(g.name).involves(x)]


def drop_odd(A: SullivanAlgebra, x: str) -> SullivanAlgebra:
    """Pass to the subalgebra without an odd generator that no differential uses."""
    g = A.gens[x]
    if not g.odd:
        raise PreconditionError(f"{x} is even; only odd generators can be dropped", x)
    used = occurrences(A, x)
    if used:
        raise PreconditionError(f"{x} occurs in d({used[0]}) = {A.d(used[0])}", used[0])
    return _assert_d2(A.subalgebra(h.name for h in A.gens if h.name != x))


def _rename_shift(
    A: SullivanAlgebra, x: str, new_name: str, g: Poly, rewrite: bool
) -> SullivanAlgebra:
    """Replace generator ``x`` by ``x' = x + g``; other differentials rewritten if asked."""
    gx = A.gens[x]
    if new_name != x and new_name in A.gens:
        raise StructuralError(f"generator name {new_name!r} already in use")
    both = A.gens.with_generator(Generator(new_name, gx.codegree)) if new_name != x else A.gens
    target = A.gens.without(x).with_generator(Generator(new_name, gx.codegree)) \
        if new_name != x else A.gens
    gb = g.transport(both)
    if new_name != x:
        xprime = Poly.generator(both, new_name)
        replacement = xprime - gb
    else:
        replacement = Poly.generator(both, x) - gb
    diffs = {}
    for h in A.gens:
        dh = A.d(h.name).transport(both)
        if h.name == x:
            dh = A.extend_differential(A.generator(x) + g).transport(both)
            diffs[new_name] = substitute(dh, x, replacement).transport(target)
            continue
        if dh.involves(x):
            if not rewrite:
                raise PreconditionError(
                    f"{x} occurs in d({h.name}); change of variables needs it absent", h.name
                )
            dh = substitute(dh, x, replacement)
        diffs[h.name] = dh.transport(target)
    return SullivanAlgebra(target, diffs, A.name)


def change_of_variables(
    A: SullivanAlgebra,
    x: str,
    g: PolyLike,
    new_name: Optional[str] = None,
    rewrite: bool = False,
) -> Tuple[SullivanAlgebra, IsoRecord]:
    """Replace generator ``x`` by the cocycle ``x' = x + g`` with ``g`` decomposable.

    By default ``x`` must not occur in any other differential, which makes the
    move trivially invertible.  ``rewrite=True`` instead substitutes
    ``x = x' - g`` everywhere, which is still an isomorphism of CDGAs.
    """
    g = A.poly(g)
    gx = A.gens[x]
    if not g.terms:
        if A.d(x).terms:
            raise PreconditionError(f"d({x} + 0) = {A.d(x)} is not zero", x)
        return A, IsoRecord(x, x, g)
    if not g.is_homogeneous() or g.codegree != gx.codegree:
        raise DegreeError(f"{g} must be homogeneous of codegree {gx.codegree}")
    if g.min_word_length() < 2:
        raise PreconditionError(f"{g} is not decomposable", x)
    if g.involves(x):
        raise PreconditionError(f"{g} involves {x}", x)
    if A.extend_differential(A.generator(x) + g).terms:
        raise PreconditionError(f"d({x} + {g}) is not zero", x)
    new_name = new_name or _primed(A.gens, x)
    B = _rename_shift(A, x, new_name, g, rewrite)
    return _assert_d2(B), IsoRecord(x, new_name, g)


def _primed(gens: GeneratorSet, x: str) -> str:
    name = x + "'"
    while name in gens:
        name += "'"
    return name


def apply_iso(A: SullivanAlgebra, record: IsoRecord, rewrite: bool = True) -> SullivanAlgebra:
    """Replay a recorded change of variables."""
    if record.old == record.new and not record.g.terms:
        return A
    B, _ = change_of_variables(A, record.old, record.g.transport(A.gens), record.new, rewrite)
    return B


def split_quadratic(dy: Poly, x: str):
    """Write ``dy = c*x^2 + a*x + b`` with a, b free of x; ShapeError otherwise."""
    gens = dy.gens
    i = gens.index[x]
    parts = {0: {}, 1: {}, 2: {}}
    for mono, c in dy.terms.items():
        e = mono[i]
        if e > 2:
            raise ShapeError(f"d = {dy} has degree {e} in {x}")
        rest = tuple(0 if j == i else v for j, v in enumerate(mono))
        parts[e][rest] = c
    quad = parts[2]
    if set(quad) != {gens.unit}:
        raise ShapeError(f"the x^2 coefficient of {dy} must be a nonzero scalar")
    c = quad[gens.unit]
    return c, Poly(gens, parts[1]), Poly(gens, parts[0])


def odd_sphere_rewrite(A: SullivanAlgebra, x: str, y: str, new_name: Optional[str] = None):
    """Complete the square in ``d(y) = x^2 + a x + b``.

    Returns ``(B, record)`` where ``B`` uses ``x' = x + a/2`` (divided by the
    leading scalar when it is not 1), so that ``d(x') = 0`` and
    ``d(y) = x'^2 + (b - a^2/4)``.
    """
    gx, gy = A.gens[x], A.gens[y]
    if gx.odd or gx.codegree % 2:
        raise PreconditionError(f"{x} must be even", x)
    m2 = gx.codegree
    if not gy.odd or gy.codegree != 2 * m2 - 1:
        raise PreconditionError(f"{y} must be odd of codegree {2 * m2 - 1}", y)
    c, a, b = split_quadratic(A.d(y), x)
    for part in (a, b):
        if part.terms and (part.involves(y)):
            raise ShapeError(f"{part} involves {y}")
    shift = a.scale(Fraction(1, 2) / c)
    new_name = new_name or _primed(A.gens, x)
    B = _rename_shift(A, x, new_name, shift, rewrite=True)
    _assert_d2(B)
    if B.d(new_name).terms:
        raise ShapeError(f"d({new_name}) = {B.d(new_name)} does not vanish")
    return B, IsoRecord(x, new_name, shift)
