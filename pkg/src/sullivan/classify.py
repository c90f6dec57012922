"""Decision procedures: regularity, the spherical-fibration standard form, and duality.

``sci_standard_form`` strips generators from the top codegree down.  Odd top
generators occur in no differential and go to the fibre.  An even top
generator ``x`` is turned into a cocycle ``x + g`` with ``g`` decomposable
when ``-d(x)`` lies in ``d`` of the decomposables of codegree ``|x|``; it then
goes to the base.  When no such ``g`` exists the input is not a complete
intersection and the linear functional certifying that is returned instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Union

from .cohomology import (
    CohomologyTable,
    Refusal,
    cohomology,
    decomposable_basis,
    hurewicz_witness,
)
from .errors import InconclusiveError, RangeError, StructuralError
from .gca import Generator, Poly
from .linalg import image_and_kernel
from .model import (
    SullivanAlgebra,
    change_of_variables,
    drop_odd,
    occurrences,
    quotient_even_cocycle,
)
from .series import (
    DualityVerdict,
    FitRefusal,
    RationalSeriesForm,
    functional_check,
    hilbert_series,
    loop_growth,
    rational_fit,
)


def classify_regular(A: SullivanAlgebra) -> bool:
    """No odd generators (then ``d = 0`` for parity reasons)."""
    return not A.odd_generators


# -- standard form ----------------------------------------------------------------


@dataclass(frozen=True)
class SciStep:
    """One processed generator: ``strip-odd`` or ``strip-even`` (with its witness)."""

    kind: str
    generator: str
    codegree: int
    witness: Optional[Poly] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "generator": self.generator,
            "codegree": self.codegree,
            "witness": None if self.witness is None else str(self.witness),
        }


@dataclass
class SciCertificate:
    """Evidence that ``A`` is a fibration of odd spheres over an even base.

    Replaying the even steps as changes of variables on the input gives an
    isomorphic algebra in which every even generator is a cocycle.
    """

    algebra_name: str
    steps: List[SciStep]
    base: List[Generator]
    fibre: List[Generator]

    @property
    def codimension(self) -> int:
        return len(self.fibre)

    @property
    def base_names(self) -> List[str]:
        return [g.name for g in self.base]

    @property
    def fibre_names(self) -> List[str]:
        return [g.name for g in self.fibre]

    def __bool__(self):
        return True

    def normal_form(self, A: SullivanAlgebra) -> SullivanAlgebra:
        """Apply every recorded change of variables to ``A``."""
        B = A
        for step in self.steps:
            if step.witness is not None and step.witness.terms:
                g = step.witness.transport(B.gens)
                B, _ = change_of_variables(B, step.generator, g, step.generator, rewrite=True)
        return B

    def verify(self, A: SullivanAlgebra, bound: Optional[int] = None) -> bool:
        """Replay on ``A``: the result must validate, have cocycle even generators,
        and the same cohomology dimensions up to ``bound``."""
        B = self.normal_form(A)
        report = B.validate()
        if not (report.valid and report.even_cocycle_only):
            return False
        if sorted(self.base_names + self.fibre_names) != sorted(A.gens.names):
            return False
        if sorted(self.fibre_names) != sorted(g.name for g in A.odd_generators):
            return False
        if bound is not None:
            return cohomology(A, bound, False).dims == cohomology(B, bound, False).dims
        return True

    def to_dict(self) -> dict:
        return {
            "type": "sci-certificate",
            "steps": [s.to_dict() for s in self.steps],
            "base": [[g.name, g.codegree] for g in self.base],
            "fibre": [[g.name, g.codegree] for g in self.fibre],
            "codimension": self.codimension,
        }


@dataclass
class HurewiczObstruction:
    """``x`` is an even generator with no decomposable ``g`` making ``x + g`` a cocycle.

    ``refusal.functional`` vanishes on ``d`` of every decomposable monomial of
    codegree ``|x|`` and pairs nontrivially with ``-d(x)``.
    """

    generator: str
    codegree: int
    differential: Poly
    refusal: Refusal
    steps: List[SciStep] = field(default_factory=list)

    def __bool__(self):
        return False

    def functional(self, A: SullivanAlgebra) -> Poly:
        gens = self.refusal.target.gens
        return Poly(gens, self.refusal.functional).transport(A.gens)

    def verify(self, A: SullivanAlgebra) -> bool:
        """One matrix-vector check against ``A`` itself."""
        phi = self.functional(A)

        def pair(p: Poly) -> Fraction:
            return sum((c * p.coefficient(m) for m, c in phi.terms.items()), Fraction(0))

        if not pair(-A.d(self.generator)):
            return False
        return all(
            not pair(A.extend_differential(Poly.monomial(A.gens, m)))
            for m in decomposable_basis(self.codegree, A.gens)
        )

    def describe(self) -> str:
        return f"obstruction at {self.generator} (d{self.generator}={self.differential})"

    def to_dict(self) -> dict:
        gens = self.refusal.target.gens
        return {
            "type": "hurewicz-obstruction",
            "generator": self.generator,
            "codegree": self.codegree,
            "differential": str(self.differential),
            "functional": [
                [gens.format_monomial(m), c.numerator, c.denominator]
                for m, c in sorted(self.refusal.functional.items(), reverse=True)
            ],
            "steps": [s.to_dict() for s in self.steps],
        }


def sci_standard_form(A: SullivanAlgebra) -> Union[SciCertificate, HurewiczObstruction]:
    work = A
    steps: List[SciStep] = []
    base: List[Generator] = []
    fibre: List[Generator] = []
    while len(work):
        s = work.top_codegree
        tops = [g for g in work.gens if g.codegree == s]
        for g in tops:
            used = occurrences(work, g.name)
            if used:
                raise StructuralError(
                    f"top generator {g.name} occurs in d({used[0]}); the input is not minimal"
                )
        if s % 2:
            for g in tops:
                work = drop_odd(work, g.name)
                fibre.append(g)
                steps.append(SciStep("strip-odd", g.name, s))
            continue
        for g in tops:
            w = hurewicz_witness(work, g.name)
            if isinstance(w, Refusal):
                return HurewiczObstruction(g.name, s, work.d(g.name), w, steps)
            if w.terms:
                work, _ = change_of_variables(work, g.name, w, g.name)
            work = quotient_even_cocycle(work, g.name)
            base.append(g)
            steps.append(SciStep("strip-even", g.name, s, w))
    base.sort(key=lambda g: g.sort_key)
    fibre.sort(key=lambda g: g.sort_key)
    return SciCertificate(A.name, steps, base, fibre)


def gorenstein_shift(cert: SciCertificate) -> int:
    """``sum(|v| - 1)`` over the base minus ``sum |x|`` over the fibre."""
    return sum(g.codegree - 1 for g in cert.base) - sum(g.codegree for g in cert.fibre)


# -- duality of finite cohomology ----------------------------------------------------


def pd_check(table: CohomologyTable, n: int) -> bool:
    """Poincaré duality of formal dimension ``n`` through an exact pairing rank check."""
    if n > table.max_codegree:
        raise RangeError(f"formal dimension {n} beyond the table ({table.max_codegree})")
    if any(table.dims[k] for k in range(n + 1, table.max_codegree + 1)):
        raise InconclusiveError(f"cohomology does not vanish above {n} inside the window")
    if n + 1 > table.max_codegree:
        raise InconclusiveError("no room above the formal dimension to see vanishing")
    if table.dims[n] != 1:
        return False
    for k in range(n + 1):
        if table.dims[k] != table.dims[n - k]:
            return False
    for k in range(n // 2 + 1):
        left, right = table.representatives(k), table.representatives(n - k)
        images = [
            {i: c for i, c in enumerate(
                [table.class_coordinates(a * b)[0] if (a * b).terms else Fraction(0)
                 for b in right]) if c}
            for a in left
        ]
        image, _ = image_and_kernel(images, len(right))
        if image.rank != len(left):
            return False
    return True


def formal_dimension(table: CohomologyTable, margin: int) -> Optional[int]:
    """Top nonzero codegree when at least ``margin`` zero codegrees follow it."""
    nonzero = [k for k, d in enumerate(table.dims) if d]
    top = nonzero[-1]
    return top if table.max_codegree - top >= margin else None


# -- reports ---------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    algebra_name: str
    regular: bool
    sci: bool
    gci: bool
    pure: bool
    even_cocycle_only: bool
    elliptic_heuristic: bool
    noetherian: bool
    codimension: Optional[int]
    growth_degree: Optional[int]
    gorenstein_shift: Optional[int]
    certificate: Optional[SciCertificate]
    obstruction: Optional[HurewiczObstruction]
    labels: Dict[str, bool] = field(default_factory=dict)
    reasons: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    nci_length: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra_name,
            "regular": self.regular,
            "sci": self.sci,
            "gci": self.gci,
            "pure": self.pure,
            "even_cocycle_only": self.even_cocycle_only,
            "elliptic_heuristic": self.elliptic_heuristic,
            "noetherian": self.noetherian,
            "codimension": self.codimension,
            "growth_degree": self.growth_degree,
            "gorenstein_shift": self.gorenstein_shift,
            "labels": dict(self.labels),
            "certificate": self.certificate.to_dict() if self.certificate is not None else None,
            "obstruction": self.obstruction.to_dict() if self.obstruction is not None else None,
            "reasons": list(self.reasons),
            "nci_length": self.nci_length,
        }


def gci_report(A: SullivanAlgebra, result, max_degree: int = 24) -> dict:
    """gci verdict with g-codimension, cross-checked against loop-space growth."""
    growth = loop_growth(A, max_degree)
    odd = len(A.odd_generators)
    expected = odd - 1 if odd else -1
    if growth.growth_degree != expected:
        raise AssertionError(
            f"loop growth {growth.growth_degree} disagrees with {odd} odd generators"
        )
    if isinstance(result, SciCertificate):
        return {
            "gci": True,
            "g_codimension": result.codimension,
            "growth_degree": growth.growth_degree,
            "reason": "standard form found; g-codimension equals the number of odd generators",
        }
    return {
        "gci": False,
        "g_codimension": None,
        "growth_degree": growth.growth_degree,
        "reason": "not sci, hence not gci for a model with finitely many generators",
    }


def classify(A: SullivanAlgebra, max_codegree: int = 24, max_degree: int = 24) -> ClassificationReport:
    result = sci_standard_form(A)
    table = cohomology(A, max_codegree, representatives=False)
    gci = gci_report(A, result, max_degree)
    sci = isinstance(result, SciCertificate)
    top = A.top_codegree if len(A) else 0
    nonzero = [k for k, d in enumerate(table.dims) if d]
    elliptic = max_codegree - nonzero[-1] >= max(top, 1)
    report = ClassificationReport(
        algebra_name=A.name,
        regular=classify_regular(A),
        sci=sci,
        gci=gci["gci"],
        pure=A.is_pure,
        even_cocycle_only=A.even_cocycle_only,
        elliptic_heuristic=elliptic,
        noetherian=sci,
        codimension=result.codimension if sci else None,
        growth_degree=gci["growth_degree"],
        gorenstein_shift=gorenstein_shift(result) if sci else None,
        certificate=result if sci else None,
        obstruction=None if sci else result,
    )
    report.labels = {"eci": sci, "zci": sci and A.is_pure}
    report.reasons.append(gci["reason"])
    if sci:
        report.reasons.append("standard form found, so the cohomology ring is Noetherian")
    else:
        report.reasons.append(
            "dual Hurewicz map is not onto in even codegree "
            f"{result.codegree}, so the cohomology ring is not Noetherian"
        )
    report.warnings.append(
        "elliptic flag is a heuristic: cohomology "
        + ("vanishes" if elliptic else "does not vanish")
        + f" above codegree {nonzero[-1]} within the window {max_codegree}"
    )
    return report


def duality(A: SullivanAlgebra, max_codegree: int, denominators=None):
    """Fit the Hilbert series and run the functional-equation checks.

    Returns ``(form_or_refusal, verdict_or_None)``.
    """
    from .series import rational_fit_auto

    table = cohomology(A, max_codegree, representatives=False)
    series = hilbert_series(table)
    if denominators is None:
        evens = [g.codegree for g in A.even_generators]
        form = rational_fit_auto(series, evens, len(evens))
    else:
        form = rational_fit(series, denominators)
    if isinstance(form, FitRefusal):
        return form, None
    scan = 2 * (A.top_codegree if len(A) else 1)
    return form, functional_check(form, scan)
