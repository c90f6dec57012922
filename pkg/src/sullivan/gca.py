"""Exact arithmetic in free graded-commutative algebras over Q.

A monomial over a :class:`GeneratorSet` is an exponent tuple aligned with the
set's canonical order, (codegree, name).  Odd generators carry exponent 0 or 1.
The canonical form of a product lists its factors in that order; the sign of a
product comes from the transpositions needed to sort the odd factors.

>>> gens = GeneratorSet([Generator("v", 2), Generator("x", 3), Generator("w", 4)])
>>> v, x, w = (Poly.generator(gens, n) for n in "vxw")
>>> str(x * v * v)
'v^2*x'
>>> basis(7, gens) == [gens.monomial(v=2, x=1), gens.monomial(w=1, x=1)]
True
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import DegreeError, StructuralError

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Generator:
    name: str
    codegree: int

    def __post_init__(self):
        if not isinstance(self.codegree, int) or self.codegree < 2:
            raise DegreeError(
                f"generator {self.name!r} has codegree {self.codegree}; "
                "only simply connected models (codegree >= 2) are supported"
            )

    @property
    def odd(self) -> bool:
        return self.codegree % 2 == 1

    @property
    def sort_key(self):
        return (self.codegree, self.name)


class GeneratorSet:
    """An immutable, canonically ordered set of generators."""

    __slots__ = ("generators", "index", "odd_indices", "codegrees", "_hash")

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(sorted(generators, key=lambda g: g.sort_key))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            dup = sorted(n for n in set(names) if names.count(n) > 1)
            raise StructuralError(f"duplicate generator names: {', '.join(dup)}")
        self.generators = gens
        self.index = {g.name: i for i, g in enumerate(gens)}
        self.odd_indices = tuple(i for i, g in enumerate(gens) if g.odd)
        self.codegrees = tuple(g.codegree for g in gens)
        self._hash = hash(gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __contains__(self, name) -> bool:
        return name in self.index

    def __getitem__(self, name: str) -> Generator:
        try:
            return self.generators[self.index[name]]
        except KeyError:
            raise StructuralError(f"unknown generator {name!r}") from None

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, GeneratorSet) and self.generators == other.generators

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{g.name}{g.codegree}" for g in self.generators)
        return f"GeneratorSet({inner})"

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def unit(self) -> Monomial:
        return (0,) * len(self.generators)

    def monomial(self, **exponents: int) -> Monomial:
        exps = [0] * len(self.generators)
        for name, e in exponents.items():
            exps[self.index[name]] = e
        return tuple(exps)

    def codegree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.codegrees))

    def word_length(self, mono: Monomial) -> int:
        return sum(mono)

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for g, e in zip(self.generators, mono):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    def without(self, *names: str) -> "GeneratorSet":
        for n in names:
            self[n]
        return GeneratorSet(g for g in self.generators if g.name not in names)

    def with_generator(self, gen: Generator) -> "GeneratorSet":
        return GeneratorSet(self.generators + (gen,))

    def fresh_name(self, stems=("w", "t", "s", "r", "q")) -> str:
        for stem in stems:
            if stem not in self.index:
                return stem
        k = 2
        while True:
            for stem in stems:
                if f"{stem}{k}" not in self.index:
                    return f"{stem}{k}"
            k += 1


def mono_mul(a: Monomial, b: Monomial, odd_indices) -> Tuple[int, Monomial]:
    """Product of two canonical monomials as ``(sign, monomial)``; sign 0 means zero."""
    flips = 0
    seen = 0
    for i in reversed(odd_indices):
        if b[i]:
            if a[i]:
                return 0, a
            flips += seen
        if a[i]:
            seen += 1
    return (-1 if flips & 1 else 1), tuple(x + y for x, y in zip(a, b))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Poly:
    """A sparse Q-linear combination of canonical monomials.

    Instances are treated as immutable; every operation returns a new Poly.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens: GeneratorSet, terms: Mapping[Monomial, Scalar] = ()):
        self.gens = gens
        clean: Dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        n = len(gens)
        for mono, c in items:
            if len(mono) != n:
                raise StructuralError("monomial length does not match the generator set")
            c = _as_fraction(c)
            if c:
                if any(mono[i] > 1 for i in gens.odd_indices):
                    continue
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self.terms = clean

    @classmethod
    def _raw(cls, gens, terms):
        p = cls.__new__(cls)
        p.gens = gens
        p.terms = terms
        return p

    @classmethod
    def zero(cls, gens: GeneratorSet) -> "Poly":
        return cls._raw(gens, {})

    @classmethod
    def one(cls, gens: GeneratorSet) -> "Poly":
        return cls._raw(gens, {gens.unit: Fraction(1)})

    @classmethod
    def constant(cls, gens: GeneratorSet, c: Scalar) -> "Poly":
        return cls(gens, {gens.unit: c})

    @classmethod
    def generator(cls, gens: GeneratorSet, name: str) -> "Poly":
        exps = [0] * len(gens)
        exps[gens.index[name]] = 1
        return cls._raw(gens, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, gens: GeneratorSet, mono: Monomial, coeff: Scalar = 1) -> "Poly":
        return cls(gens, {mono: coeff})

    # -- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), reverse=True))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def codegrees(self) -> set:
        return {self.gens.codegree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.codegrees()) <= 1

    @property
    def codegree(self):
        """Codegree of a nonzero homogeneous element; None for zero."""
        degs = self.codegrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeError(f"{self} is not homogeneous")
        return degs.pop()

    def min_word_length(self):
        return min((sum(m) for m in self.terms), default=None)

    def involves(self, name: str) -> bool:
        i = self.gens.index[name]
        return any(m[i] for m in self.terms)

    def leading_monomial(self) -> Monomial:
        return max(self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.gens is not self.gens and other.gens != self.gens:
            raise StructuralError("operands live over different generator sets")
        return None

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.gens, other)
        if self._check(other) is NotImplemented:
            return None
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly.zero(self.gens)
        return Poly._raw(self.gens, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        odd = self.gens.odd_indices
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign, m = mono_mul(ma, mb, odd)
                if sign:
                    v = out.get(m, 0) + sign * ca * cb
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return Poly._raw(self.gens, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = Poly.one(self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.gens, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def is_scalar_multiple_of(self, other: "Poly") -> bool:
        """True when ``self == c * other`` for some nonzero rational c."""
        if not self.terms or not other.terms or self.terms.keys() != other.terms.keys():
            return False
        m = next(iter(self.terms))
        c = self.terms[m] / other.terms[m]
        return all(self.terms[k] == c * other.terms[k] for k in self.terms)

    # -- change of generator set -------------------------------------------

    def transport(self, gens: GeneratorSet) -> "Poly":
        """Re-express over another generator set containing every name used here."""
        if gens == self.gens:
            return Poly._raw(gens, dict(self.terms))
        src = self.gens.generators
        positions = []
        for i, g in enumerate(src):
            if g.name in gens.index:
                if gens[g.name].codegree != g.codegree:
                    raise StructuralError(f"generator {g.name!r} changed codegree")
                positions.append(gens.index[g.name])
            else:
                positions.append(None)
        out = {}
        for mono, c in self.terms.items():
            for i, e in enumerate(mono):
                if e and positions[i] is None:
                    raise StructuralError(
                        f"{src[i].name!r} does not exist in the target generator set"
                    )
            out_mono, sign = _reorder(mono, positions, gens, src)
            out[out_mono] = out.get(out_mono, 0) + sign * c
        return Poly(gens, out)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self:
            body = self.gens.format_monomial(mono)
            if body == "1":
                text = _fmt(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = f"{_fmt(abs(c))}*{body}"
            pieces.append(("-" if c < 0 else "+", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Poly({self})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _reorder(mono, positions, gens, src):
    """Map a monomial to new positions; sign from re-sorting odd factors."""
    new = [0] * len(gens)
    odd_targets = []
    for i, e in enumerate(mono):
        if e:
            new[positions[i]] = e
            if src[i].odd:
                odd_targets.append(positions[i])
    inversions = sum(
        1 for a in range(len(odd_targets)) for b in range(a + 1, len(odd_targets))
        if odd_targets[a] > odd_targets[b]
    )
    return tuple(new), (-1 if inversions & 1 else 1)


def multiply(a: Poly, b: Poly) -> Poly:
    return a * b


def substitute(p: Poly, name: str, replacement: Poly) -> Poly:
    """Rewrite every occurrence of generator ``name`` in ``p`` by ``replacement``."""
    gens = p.gens
    g = gens[name]
    if replacement.gens != gens:
        raise StructuralError("replacement lives over a different generator set")
    if replacement.terms:
        if not replacement.is_homogeneous() or replacement.codegree != g.codegree:
            raise DegreeError(
                f"replacement for {name!r} must be homogeneous of codegree {g.codegree}"
            )
    i = gens.index[name]
    powers = {0: Poly.one(gens)}
    out = Poly.zero(gens)
    for mono, c in p.terms.items():
        e = mono[i]
        if not e:
            out = out + Poly._raw(gens, {mono: c})
            continue
        left = tuple(x if j < i else 0 for j, x in enumerate(mono))
        right = tuple(x if j > i else 0 for j, x in enumerate(mono))
        if e not in powers:
            powers[e] = replacement ** e
        term = Poly._raw(gens, {left: c}) * powers[e] * Poly._raw(gens, {right: Fraction(1)})
        out = out + term
    return out


@lru_cache(maxsize=None)
def _basis_cached(n: int, gens: GeneratorSet):
    degs = gens.codegrees
    odd = [g.odd for g in gens]
    k = len(degs)
    out = []

    def rec(i, remaining, prefix):
        if i == k:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        d = degs[i]
        top = 1 if odd[i] else remaining // d
        for e in range(min(top, remaining // d) + 1):
            prefix.append(e)
            rec(i + 1, remaining - e * d, prefix)
            prefix.pop()

    rec(0, n, [])
    out.sort(reverse=True)
    return tuple(out)


def basis(n: int, gens: GeneratorSet) -> list:
    """All canonical monomials of codegree exactly ``n``, in a fixed order."""
    if n < 0:
        return []
    return list(_basis_cached(n, gens))


def truncated_dimension_series(gens: GeneratorSet, max_codegree: int):
    from .series import LaurentSeries

    return LaurentSeries(
        {n: len(basis(n, gens)) for n in range(max_codegree + 1)}, 0, max_codegree
    )
