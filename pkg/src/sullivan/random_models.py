"""Seeded random minimal Sullivan algebras for self-tests and oracle comparisons."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .gca import Generator, GeneratorSet, Poly, basis
from .linalg import image_and_kernel
from .model import SullivanAlgebra

_NAMES = "abcefghjkmnpqrsuvwxyz"


def random_model(
    rng: random.Random,
    max_generators: int = 6,
    max_codegree: int = 8,
    coefficient_range: int = 2,
    density: float = 0.7,
    name: str = "Rand",
) -> SullivanAlgebra:
    """A valid minimal model with random generators and differentials.

    Each differential is a random decomposable cocycle of the right codegree
    in the generators below it, so ``d^2 = 0`` and minimality hold by
    construction.
    """
    k = rng.randint(1, max_generators)
    names = rng.sample(_NAMES, k)
    gens = [Generator(nm, rng.randint(2, max_codegree)) for nm in names]
    gset = GeneratorSet(gens)
    diffs = {}
    for g in gset:
        lower = GeneratorSet([h for h in gset if h.codegree < g.codegree])
        if not len(lower) or rng.random() > density:
            continue
        A = SullivanAlgebra(lower, {h: diffs[h].transport(lower) for h in diffs if h in lower})
        n = g.codegree + 1
        mons = [m for m in basis(n, lower) if sum(m) >= 2]
        if not mons:
            continue
        idx = {m: i for i, m in enumerate(basis(n + 1, lower))}
        images = [{idx[m]: c for m, c in A.d_monomial(mono).items()} for mono in mons]
        _, kernel = image_and_kernel(images, len(idx))
        if not kernel:
            continue
        terms = {}
        for vec in kernel:
            c = rng.randint(-coefficient_range, coefficient_range)
            for j, v in vec.items():
                terms[mons[j]] = terms.get(mons[j], 0) + c * v
        p = Poly(lower, terms)
        if p.terms:
            diffs[g.name] = p.transport(gset)
    return SullivanAlgebra(gset, diffs, name)


def random_poly(rng: random.Random, gens: GeneratorSet, n: int, terms: int = 3) -> Poly:
    """Random homogeneous element of codegree ``n`` (possibly zero)."""
    mons = basis(n, gens)
    if not mons:
        return Poly.zero(gens)
    out = {}
    for _ in range(terms):
        m = rng.choice(mons)
        out[m] = out.get(m, 0) + Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return Poly(gens, out)


def seeded(seed: Optional[int]) -> random.Random:
    return random.Random(seed)
