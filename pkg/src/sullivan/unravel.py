"""Unravelling a finite minimal Sullivan algebra into a complete intersection.

The loop in :func:`nci_unravel`:

1. if the standard form exists, stop;
2. if a minimal even generator is already a cocycle, divide it out;
3. otherwise make one a cocycle with :func:`eliminate_minimal_even`, which
   adjoins odd generators killing even classes of the odd subalgebra below it
   until ``d(a)`` becomes a coboundary there, then changes variables.

The length bound counts adjoined and divided-out generators plus the
codimension of the final standard form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .classify import SciCertificate, sci_standard_form
from .cohomology import Refusal, cohomology, differential_images, is_coboundary, to_vector, from_vector
from .errors import SullivanError
from .gca import Poly
from .linalg import Echelon
from .model import (
    SullivanAlgebra,
    adjoin_odd,
    change_of_variables,
    drop_odd,
    quotient_even_cocycle,
)

ADJOIN = "adjoin-odd"
QUOTIENT = "quotient-even"
DROP = "drop-odd"
CHANGE = "change-of-variables"


@dataclass(frozen=True)
class NciMove:
    """One unravelling step.

    ``poly`` is the new differential for an adjoin and the shift ``g`` of
    ``new = generator + g`` for a change of variables, written over the
    generators of the algebra the move applies to.
    """

    kind: str
    generator: str
    codegree: int
    poly: str = ""
    new_name: str = ""

    def apply(self, A: SullivanAlgebra) -> SullivanAlgebra:
        if self.kind == ADJOIN:
            return adjoin_odd(A, A.poly(self.poly) if self.poly else 0, self.generator, self.codegree)
        if self.kind == QUOTIENT:
            return quotient_even_cocycle(A, self.generator)
        if self.kind == DROP:
            return drop_odd(A, self.generator)
        if self.kind == CHANGE:
            B, _ = change_of_variables(
                A, self.generator, A.poly(self.poly), self.new_name or None, rewrite=True
            )
            return B
        raise SullivanError(f"unknown move kind {self.kind!r}")

    @property
    def counts(self) -> int:
        return 1 if self.kind in (ADJOIN, QUOTIENT) else 0

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "generator": self.generator,
            "codegree": self.codegree,
            "poly": self.poly,
            "new_name": self.new_name,
        }

    @classmethod
    def from_dict(cls, d) -> "NciMove":
        return cls(d["kind"], d["generator"], d["codegree"], d.get("poly", ""), d.get("new_name", ""))

    def __str__(self):
        if self.kind == ADJOIN:
            return f"adjoin {self.generator} (codegree {self.codegree}) with d{self.generator} = {self.poly or 0}"
        if self.kind == CHANGE:
            return f"change of variables {self.new_name} = {self.generator} + ({self.poly})"
        if self.kind == QUOTIENT:
            return f"divide out the even cocycle {self.generator}"
        return f"drop {self.generator}"


@dataclass
class NciCertificate:
    algebra_name: str
    moves: List[NciMove]
    final: SullivanAlgebra
    final_certificate: SciCertificate

    @property
    def final_codimension(self) -> int:
        return self.final_certificate.codimension

    @property
    def length(self) -> int:
        return sum(m.counts for m in self.moves) + self.final_codimension

    def adjoined(self) -> List[NciMove]:
        return [m for m in self.moves if m.kind == ADJOIN]

    def to_dict(self) -> dict:
        return {
            "type": "nci-certificate",
            "moves": [m.to_dict() for m in self.moves],
            "final": self.final.to_text(),
            "final_codimension": self.final_codimension,
            "length": self.length,
        }


# -- residuals -----------------------------------------------------------------------------


def odd_part(A: SullivanAlgebra, n: int) -> SullivanAlgebra:
    """Sub-CDGA on the generators of codegree below ``n``."""
    return A.subalgebra([g.name for g in A.gens if g.codegree < n])


def boundary_normal_form(T: SullivanAlgebra, f: Poly) -> Poly:
    """Canonical representative of ``f`` modulo ``d(T)`` in its codegree."""
    n = f.codegree
    if n is None:
        return f
    ech = Echelon.from_vectors(differential_images(T, n - 1), len(_basis(T, n)))
    scale, r = ech.reduce(to_vector(f, n))
    return from_vector({k: v / scale for k, v in r.items()}, T.gens, n)


def _basis(T, n):
    from .gca import basis

    return basis(n, T.gens)


def _even_classes(T: SullivanAlgebra, top: int) -> int:
    if top < 2:
        return 0
    table = cohomology(T, top, representatives=False)
    return sum(table.dims[k] for k in range(2, top + 1, 2))


def _candidates(T: SullivanAlgebra, residual: Poly) -> List[Poly]:
    """Delete one generator from each residual monomial; keep the new even classes."""
    seen = set()
    out = []
    for mono in residual.terms:
        for i, e in enumerate(mono):
            if not e:
                continue
            rest = tuple(v - 1 if j == i else v for j, v in enumerate(mono))
            if rest in seen or sum(rest) < 2:
                continue
            seen.add(rest)
            c = Poly.monomial(T.gens, rest)
            if c.codegree % 2 or not T.is_cocycle(c):
                continue
            if isinstance(is_coboundary(T, c), Refusal):
                out.append(c)
    out.sort(key=lambda p: (p.codegree, tuple(-e for e in next(iter(p.terms)))))
    return out


def _score(T: SullivanAlgebra, da: Poly, c: Poly) -> int:
    T2 = adjoin_odd(T, c)
    return len(boundary_normal_form(T2, da.transport(T2.gens)).terms)


def eliminate_minimal_even(A: SullivanAlgebra) -> Tuple[List[NciMove], SullivanAlgebra, str]:
    """Make a minimal even generator a cocycle by adjoining odd generators.

    Returns the moves, the resulting algebra and the name of the new cocycle
    generator.
    """
    evens = A.even_generators
    if not evens:
        raise SullivanError("no even generators to eliminate")
    a = evens[0].name
    n = evens[0].codegree
    if not A.d(a).terms:
        return [], A, a
    moves: List[NciMove] = []
    cur = A
    budget = _even_classes(odd_part(A, n), n)
    greedy = True
    cap = 4 * budget + 64
    while True:
        T = odd_part(cur, n)
        da = cur.d(a).transport(T.gens)
        u = is_coboundary(T, da)
        if not isinstance(u, Refusal):
            g = -u.transport(cur.gens)
            new_name = _primed(cur, a)
            B, _ = change_of_variables(cur, a, g, new_name, rewrite=True)
            moves.append(NciMove(CHANGE, a, n, str(g), new_name))
            return moves, B, new_name
        adjoins = sum(1 for m in moves if m.kind == ADJOIN)
        if adjoins >= cap:
            raise SullivanError(f"no progress eliminating {a} after {adjoins} adjoined generators")
        choice = None
        if greedy and adjoins < budget:
            residual = boundary_normal_form(T, da)
            cands = _candidates(T, residual)
            if cands:
                scores = [(_score(T, da, c), i) for i, c in enumerate(cands)]
                best = min(scores)
                if best[0] < len(residual.terms) or adjoins == 0:
                    choice = cands[best[1]]
        if choice is None:
            greedy = False
            choice = _lowest_even_class(T, n)
            if choice is None:
                raise SullivanError(
                    f"d({a}) is not a coboundary but no even classes remain below codegree {n}"
                )
        name = cur.gens.fresh_name()
        cur = adjoin_odd(cur, choice.transport(cur.gens), name)
        moves.append(NciMove(ADJOIN, name, choice.codegree - 1, str(choice.transport(cur.gens))))


def _lowest_even_class(T: SullivanAlgebra, top: int) -> Optional[Poly]:
    """First representative of the lowest nonzero even cohomology of ``T`` up to ``top``."""
    if top < 2:
        return None
    table = cohomology(T, top)
    for k in range(2, top + 1, 2):
        if table.dims[k]:
            return table.representatives(k)[0]
    return None


def _primed(A: SullivanAlgebra, x: str) -> str:
    name = x + "'"
    while name in A.gens:
        name += "'"
    return name


def nci_unravel(A: SullivanAlgebra) -> NciCertificate:
    moves: List[NciMove] = []
    cur = A
    while True:
        result = sci_standard_form(cur)
        if isinstance(result, SciCertificate):
            return NciCertificate(A.name, moves, cur, result)
        a = cur.even_generators[0]
        if not cur.d(a.name).terms:
            cur = quotient_even_cocycle(cur, a.name)
            moves.append(NciMove(QUOTIENT, a.name, a.codegree))
            continue
        step, cur, _ = eliminate_minimal_even(cur)
        moves.extend(step)


@dataclass
class Verification:
    ok: bool
    step: Optional[int] = None
    message: str = ""
    witness: Optional[str] = None

    def __bool__(self):
        return self.ok


def verify_certificate(A: SullivanAlgebra, cert: NciCertificate) -> Verification:
    """Replay every move with its preconditions; check the end state and the length."""
    cur = A
    for k, move in enumerate(cert.moves):
        try:
            cur = move.apply(cur)
        except SullivanError as exc:
            return Verification(False, k, f"{move}: {exc}", getattr(exc, "witness", None))
        report = cur.validate()
        if not report.valid:
            return Verification(False, k, f"{move}: result fails validation")
    if cur != cert.final:
        return Verification(False, len(cert.moves), "replay does not reach the final algebra")
    result = sci_standard_form(cur)
    if not isinstance(result, SciCertificate):
        return Verification(False, len(cert.moves), f"final algebra has an {result.describe()}")
    if result.codimension != cert.final_codimension:
        return Verification(False, len(cert.moves), "final codimension does not match")
    expected = sum(m.counts for m in cert.moves) + result.codimension
    if expected != cert.length:
        return Verification(False, len(cert.moves), "length accounting does not match")
    return Verification(True)
