"""Hilbert series: truncated Laurent series, closed forms and functional equations.

Three layers:

* :class:`LaurentPolynomial` and :class:`RationalFunction` are exact and finite;
  identities between closed forms are checked here, never numerically.
* :class:`LaurentSeries` is a series known exactly on a window ``[lo, hi]``
  and zero below ``lo``.
* :class:`RationalSeriesForm` is ``N(t) / prod(1 - t^d)``, the shape every
  fitted Hilbert series takes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InconclusiveError, PreconditionError, RangeError


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_terms(terms: Mapping[int, Fraction], var: str = "t") -> str:
    if not terms:
        return "0"
    parts = []
    for k in sorted(terms):
        c = terms[k]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _fmt_coeff(a)
        else:
            power = var if k == 1 else f"{var}^{k}" if k > 0 else f"{var}^({k})"
            body = power if a == 1 else f"{_fmt_coeff(a)}*{power}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- exact Laurent polynomials ------------------------------------------------------


class LaurentPolynomial:
    """Finite sum ``sum c_k t^k`` with integer (possibly negative) exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms: Dict[int, Fraction] = {}
        for k, c in items:
            c = _frac(c)
            if c:
                self.terms[int(k)] = self.terms.get(int(k), 0) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPolynomial":
        return cls({k: c})

    @classmethod
    def one_minus(cls, d: int) -> "LaurentPolynomial":
        """``1 - t^d``."""
        return cls({0: 1}) - cls({d: 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial({0: other})
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _lp(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lp(other))

    def __rsub__(self, other):
        return _lp(other) - self

    def __mul__(self, other):
        other = _lp(other)
        out: Dict[int, Fraction] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    @property
    def low(self) -> Optional[int]:
        return min(self.terms) if self.terms else None

    @property
    def high(self) -> Optional[int]:
        return max(self.terms) if self.terms else None

    def invert_variable(self) -> "LaurentPolynomial":
        """``p(1/t)``."""
        return LaurentPolynomial({-k: c for k, c in self.terms.items()})

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self.terms.items()})

    def value_at_one(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def order_at_one(self) -> int:
        """Multiplicity of ``t = 1`` as a root."""
        if not self.terms:
            raise ValueError("the zero polynomial vanishes to infinite order")
        _, coeffs = _normalize_poly(self)
        k = 0
        while not sum(coeffs):
            coeffs, rem = _poly_divmod(coeffs, [Fraction(-1), Fraction(1)])
            assert not rem
            k += 1
        return k

    def to_pairs(self) -> List[List[int]]:
        return [[k, c.numerator, c.denominator] for k, c in sorted(self.terms.items())]

    def __str__(self):
        return _fmt_terms(self.terms)

    def __repr__(self):
        return f"LaurentPolynomial({self})"


def _lp(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial({0: x})
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def _normalize_poly(p: LaurentPolynomial) -> Tuple[int, List[Fraction]]:
    """Split into ``t^k * q(t)`` with ``q`` an ordinary polynomial, ``q(0) != 0``."""
    k = p.low
    coeffs = [Fraction(0)] * (p.high - k + 1)
    for e, c in p.terms.items():
        coeffs[e - k] = c
    return k, coeffs


def _poly_divmod(a: List[Fraction], b: List[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, v in enumerate(b):
            a[shift + i] -= c * v
        while a and not a[-1]:
            a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


class RationalFunction:
    """``num/den`` with Laurent-polynomial numerator and denominator, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _lp(num), _lp(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = LaurentPolynomial(), LaurentPolynomial({0: 1})
            return
        kn, n = _normalize_poly(num)
        kd, d = _normalize_poly(den)
        g = _poly_gcd(n, d)
        if len(g) > 1:
            n = _poly_divmod(n, g)[0]
            d = _poly_divmod(d, g)[0]
        lead = d[0]
        self.num = LaurentPolynomial({i + kn - kd: c / lead for i, c in enumerate(n)})
        self.den = LaurentPolynomial({i: c / lead for i, c in enumerate(d)})

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        return x if isinstance(x, RationalFunction) else cls(x)

    def __eq__(self, other):
        other = RationalFunction.coerce(other) if not isinstance(other, RationalSeriesForm) \
            else other.as_rational_function()
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.num * o.den, self.den * o.num)

    def invert_variable(self) -> "RationalFunction":
        return RationalFunction(self.num.invert_variable(), self.den.invert_variable())

    def is_laurent_polynomial(self) -> bool:
        return self.den == LaurentPolynomial({0: 1})

    def __str__(self):
        if self.is_laurent_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def t_power(k: int) -> RationalFunction:
    return RationalFunction(LaurentPolynomial.monomial(k))


# -- truncated series -----------------------------------------------------------------


class LaurentSeries:
    """Coefficients known exactly on ``[lo, hi]``; zero below ``lo``."""

    __slots__ = ("coeffs", "lo", "hi")

    def __init__(self, coeffs: Mapping[int, object], lo: int, hi: int):
        if hi < lo:
            raise RangeError(f"empty window [{lo}, {hi}]")
        self.lo, self.hi = lo, hi
        self.coeffs = {}
        for k, c in coeffs.items():
            c = _frac(c)
            if c and lo <= k <= hi:
                self.coeffs[k] = c
        for k, c in coeffs.items():
            if _frac(c) and k < lo:
                raise RangeError(f"coefficient at {k} lies below the window start {lo}")

    @classmethod
    def from_list(cls, values: Sequence, lo: int = 0) -> "LaurentSeries":
        return cls(dict(enumerate(values, start=lo)), lo, lo + len(values) - 1)

    @classmethod
    def from_form(cls, form: "RationalSeriesForm", hi: int, lo: int = 0) -> "LaurentSeries":
        return form.expand(hi, lo)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.hi:
            raise RangeError(f"coefficient {k} beyond the window end {self.hi}")
        return self.coeffs.get(k, Fraction(0))

    def coefficients(self) -> List[Fraction]:
        return [self[k] for k in range(self.lo, self.hi + 1)]

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and (self.lo, self.hi) == (other.lo, other.hi)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.lo, self.hi, frozenset(self.coeffs.items())))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equal on the common part of the windows."""
        lo, hi = min(self.lo, other.lo), min(self.hi, other.hi)
        return all(self[k] == other[k] for k in range(lo, hi + 1))

    def truncate(self, hi: int) -> "LaurentSeries":
        if hi > self.hi:
            raise RangeError(f"cannot extend window to {hi}")
        return LaurentSeries(self.coeffs, self.lo, hi)

    def __add__(self, other):
        if isinstance(other, LaurentPolynomial):
            other = LaurentSeries(other.terms, min(other.low or 0, self.lo), self.hi)
        lo, hi = min(self.lo, other.lo), min(self.hi, other.hi)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentSeries(out, lo, hi)

    def __neg__(self):
        return LaurentSeries({k: -c for k, c in self.coeffs.items()}, self.lo, self.hi)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        c = _frac(c)
        return LaurentSeries({k: c * v for k, v in self.coeffs.items()}, self.lo, self.hi)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LaurentPolynomial):
            return self.mul_polynomial(other)
        lo = self.lo + other.lo
        hi = min(self.hi + other.lo, other.hi + self.lo)
        out: Dict[int, Fraction] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j <= hi:
                    out[i + j] = out.get(i + j, 0) + a * b
        return LaurentSeries(out, lo, hi)

    __rmul__ = __mul__

    def mul_polynomial(self, p: LaurentPolynomial) -> "LaurentSeries":
        if not p:
            return LaurentSeries({}, self.lo, self.hi)
        lo, hi = self.lo + p.low, self.hi + p.low
        out: Dict[int, Fraction] = {}
        for i, a in self.coeffs.items():
            for j, b in p.terms.items():
                if i + j <= hi:
                    out[i + j] = out.get(i + j, 0) + a * b
        return LaurentSeries(out, lo, hi)

    def div_one_minus(self, d: int) -> "LaurentSeries":
        """Multiply by ``1/(1 - t^d)`` for ``d >= 1``."""
        if d < 1:
            raise PreconditionError(f"geometric expansion needs a positive step, got {d}")
        out: Dict[int, Fraction] = {}
        for k in range(self.lo, self.hi + 1):
            v = self.coeffs.get(k, 0) + out.get(k - d, 0)
            if v:
                out[k] = v
        return LaurentSeries(out, self.lo, self.hi)

    def last_nonzero(self) -> Optional[int]:
        return max(self.coeffs) if self.coeffs else None

    def to_triples(self) -> List[List[int]]:
        return [[k, c.numerator, c.denominator] for k, c in sorted(self.coeffs.items())]

    @classmethod
    def from_triples(cls, triples, lo: int, hi: int) -> "LaurentSeries":
        return cls({k: Fraction(n, d) for k, n, d in triples}, lo, hi)

    def __str__(self):
        return f"{_fmt_terms(self.coeffs)} + O(t^{self.hi + 1})"

    def __repr__(self):
        return f"LaurentSeries([{self.lo}, {self.hi}]: {_fmt_terms(self.coeffs)})"


def hilbert_series(table) -> LaurentSeries:
    """``sum dim H^n t^n`` over the table's window."""
    return LaurentSeries(dict(enumerate(table.dims)), 0, table.max_codegree)


# -- closed forms ----------------------------------------------------------------------


class RationalSeriesForm:
    """``numerator / prod_d (1 - t^d)``."""

    __slots__ = ("numerator", "denominators")

    def __init__(self, numerator, denominators: Iterable[int] = ()):
        self.numerator = _lp(numerator)
        dens = tuple(sorted(int(d) for d in denominators))
        if any(d < 1 for d in dens):
            raise PreconditionError(f"denominator degrees must be positive: {dens}")
        self.denominators = dens

    def denominator_polynomial(self) -> LaurentPolynomial:
        out = LaurentPolynomial({0: 1})
        for d in self.denominators:
            out = out * LaurentPolynomial.one_minus(d)
        return out

    def as_rational_function(self) -> RationalFunction:
        return RationalFunction(self.numerator, self.denominator_polynomial())

    def expand(self, hi: int, lo: Optional[int] = None) -> LaurentSeries:
        low = self.numerator.low if self.numerator else 0
        lo = low if lo is None else min(lo, low)
        s = LaurentSeries(self.numerator.terms, lo, hi)
        for d in self.denominators:
            s = s.div_one_minus(d)
        return s

    @property
    def pole_order(self) -> int:
        """Order of the pole at ``t = 1`` (0 when the series is a polynomial there)."""
        if not self.numerator:
            return 0
        return max(len(self.denominators) - self.numerator.order_at_one(), 0)

    def with_denominators(self, extra: Iterable[int]) -> "RationalSeriesForm":
        return RationalSeriesForm(self.numerator, self.denominators + tuple(extra))

    def __eq__(self, other):
        if isinstance(other, RationalSeriesForm):
            other = other.as_rational_function()
        if isinstance(other, (RationalFunction, LaurentPolynomial, int, Fraction)):
            return self.as_rational_function() == RationalFunction.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.as_rational_function())

    def to_dict(self) -> dict:
        return {"numerator": self.numerator.to_pairs(), "denominators": list(self.denominators)}

    @classmethod
    def from_dict(cls, data) -> "RationalSeriesForm":
        return cls(
            LaurentPolynomial({k: Fraction(n, d) for k, n, d in data["numerator"]}),
            data["denominators"],
        )

    def __str__(self):
        if not self.denominators:
            return str(self.numerator)
        dens = {}
        for d in self.denominators:
            dens[d] = dens.get(d, 0) + 1
        factors = []
        for d, k in sorted(dens.items()):
            f = "(1 - t)" if d == 1 else f"(1 - t^{d})"
            factors.append(f if k == 1 else f"{f}^{k}")
        return f"({self.numerator})/{'*'.join(factors)}"

    def __repr__(self):
        return f"RationalSeriesForm({self})"


@dataclass
class FitRefusal:
    """The product ``series * prod(1 - t^d)`` does not terminate inside the window."""

    denominators: Tuple[int, ...]
    last_nonzero: Optional[int]
    margin: int

    def __bool__(self):
        return False


def rational_fit(series: LaurentSeries, denominators: Sequence[int]):
    """Fit ``series`` as ``N / prod(1 - t^d)``.

    Returns a :class:`RationalSeriesForm` when the product terminates with at
    least ``2*max(d)`` trailing zeros, a :class:`FitRefusal` when fewer than
    ``max(d)`` trailing zeros remain, and raises :class:`InconclusiveError` in
    between or when the window is too short to tell.
    """
    dens = tuple(sorted(denominators))
    if any(d < 1 for d in dens):
        raise PreconditionError(f"denominator degrees must be positive: {dens}")
    maxd = max(dens, default=1)
    prod = series
    for d in dens:
        prod = prod.mul_polynomial(LaurentPolynomial.one_minus(d))
    last = prod.last_nonzero()
    numerator_top = series.lo if last is None else last
    margin = prod.hi - numerator_top
    if margin < maxd:
        return FitRefusal(dens, last, margin)
    if margin < 2 * maxd:
        raise InconclusiveError(
            f"only {margin} trailing zeros after multiplying by the denominator; "
            f"need {2 * maxd} (extend the window)"
        )
    form = RationalSeriesForm(LaurentPolynomial(prod.coeffs), dens)
    assert form.expand(series.hi, series.lo) == series, "closed form does not re-expand"
    return form


def rational_fit_auto(series: LaurentSeries, candidates: Sequence[int], max_factors: int):
    """First successful fit over multisets of ``candidates`` of growing size.

    Multisets are tried by size, then lexicographically; inconclusive sizes
    are skipped.  Returns a :class:`FitRefusal` for the empty multiset if
    nothing fits.
    """
    from itertools import combinations_with_replacement

    pool = sorted(set(candidates))
    first_refusal = None
    saw_inconclusive = False
    for k in range(max_factors + 1):
        for dens in combinations_with_replacement(pool, k):
            try:
                out = rational_fit(series, dens)
            except InconclusiveError:
                saw_inconclusive = True
                continue
            if out:
                return out
            first_refusal = first_refusal or out
    if saw_inconclusive:
        raise InconclusiveError("no closed form fits; some candidates needed a longer window")
    return first_refusal or FitRefusal((), series.last_nonzero(), 0)


# -- functional equations --------------------------------------------------------------


PRINTED_SECOND_EQUATION = "delta(1/t) = (-t)^(r-1) t^a delta(t)"
USED_SECOND_EQUATION = "delta(1/t) = (-t)^(r-1) t^(-a) delta(t)"


@dataclass
class DualityVerdict:
    """Outcome of the Gorenstein functional-equation checks on a closed form.

    ``defect`` is 0, 1 or None (no duality detected in the scan window).
    For defect 1, ``delta`` is the correction term and ``convention`` records
    which second equation held; ``alternative_holds`` tells whether the other
    sign convention for ``t^a`` would also have held.
    """

    defect: Optional[int]
    r: int
    a: Optional[int]
    delta: Optional[RationalFunction] = None
    window: Tuple[int, int] = (0, 0)
    convention: Optional[str] = None
    alternative_holds: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    @property
    def detected(self) -> bool:
        return self.defect is not None

    def to_dict(self) -> dict:
        d = {
            "defect": self.defect,
            "r": self.r,
            "a": self.a,
            "window": list(self.window),
            "convention": self.convention,
            "alternative_holds": self.alternative_holds,
            "notes": list(self.notes),
        }
        if self.delta is not None:
            d["delta"] = {"num": self.delta.num.to_pairs(), "den": self.delta.den.to_pairs()}
        else:
            d["delta"] = None
        return d


def _sign_power(r: int) -> RationalFunction:
    """``(-t)^r`` for any integer ``r``."""
    return RationalFunction(LaurentPolynomial.monomial(r, (-1) ** (r % 2)))


def defect_zero_holds(p: RationalFunction, r: int, a: int) -> bool:
    return p.invert_variable() == _sign_power(r) * t_power(a) * p


def defect_one_delta(p: RationalFunction, r: int, a: int) -> RationalFunction:
    """``delta`` defined by ``p(1/t) - (-t)^r t^a p(t) = (-1)^(r-1) (1+t) delta(t)``."""
    lhs = p.invert_variable() - _sign_power(r) * t_power(a) * p
    factor = RationalFunction(LaurentPolynomial({0: 1, 1: 1}) * ((-1) ** ((r - 1) % 2)))
    return lhs / factor


def delta_equation_holds(delta: RationalFunction, r: int, exponent: int) -> bool:
    """``delta(1/t) == (-t)^(r-1) t^exponent delta(t)``."""
    return delta.invert_variable() == _sign_power(r - 1) * t_power(exponent) * delta


def is_hilbert_polynomial(f: RationalFunction) -> bool:
    """Nonzero Laurent polynomial with nonnegative coefficients."""
    return (
        f.is_laurent_polynomial()
        and bool(f.num)
        and all(c >= 0 for c in f.num.terms.values())
    )


def functional_check(form: RationalSeriesForm, scan: int) -> DualityVerdict:
    """Search ``a`` in ``[-scan, scan]`` for the defect-0, then the defect-1 equation.

    For defect 1, ``delta`` must come out as a nonzero Laurent polynomial with
    nonnegative coefficients (the Hilbert series of a finite module) and
    satisfy ``delta(1/t) = (-t)^(r-1) t^(-a) delta(t)``; whether the variant
    with ``t^a`` would also hold is reported alongside.  When ``r == 1`` the
    ``t^(-a)`` equation follows from the first one, so the polynomial
    condition is what pins ``a`` down.
    """
    p = form.as_rational_function()
    r = form.pole_order
    window = (-scan, scan)
    for a in range(-scan, scan + 1):
        if defect_zero_holds(p, r, a):
            return DualityVerdict(0, r, a, None, window)
    hits = []
    for a in range(-scan, scan + 1):
        delta = defect_one_delta(p, r, a)
        if is_hilbert_polynomial(delta) and delta_equation_holds(delta, r, -a):
            hits.append((a, delta))
    if hits:
        a, delta = hits[0]
        notes = []
        if len(hits) > 1:
            notes.append(f"{len(hits)} shifts satisfy the defect-1 equations; reporting the smallest")
        alt = delta_equation_holds(delta, r, a)
        if not alt:
            notes.append(
                "the t^a form of the second equation fails here; the t^(-a) form holds"
            )
        return DualityVerdict(1, r, a, delta, window, USED_SECOND_EQUATION, alt, notes)
    return DualityVerdict(None, r, None, None, window)


# -- loop space series and growth ----------------------------------------------------------


def loop_homology_form(gens) -> RationalSeriesForm:
    """Closed form of the loop-space homology series of a finite model.

    The homotopy Lie algebra has a class of degree ``|g| - 1`` per generator
    ``g``; by the PBW theorem the series is that of the free graded-commutative
    algebra on those classes.
    """
    num = LaurentPolynomial({0: 1})
    dens = []
    for g in gens:
        n = g.codegree - 1
        if n % 2:
            num = num * LaurentPolynomial({0: 1, n: 1})
        else:
            dens.append(n)
    return RationalSeriesForm(num, dens)


def loop_homology_series(A, max_degree: int) -> LaurentSeries:
    if max_degree < 0:
        raise RangeError("max_degree must be non-negative")
    return loop_homology_form(A.gens).expand(max_degree, 0)


def loop_even_degrees(A) -> List[int]:
    return sorted(g.codegree - 1 for g in A.gens if g.odd)


@dataclass
class GrowthReport:
    """``growth_degree`` is -1 for eventually-zero series, else ``k - 1`` where
    ``k`` applications of ``(1 - t^period)`` make the series eventually zero.

    ``witness`` is the resulting polynomial: the coefficients are bounded by
    ``max|witness| * (n/period + 1)^growth_degree``.
    """

    growth_degree: int
    period: int
    witness: LaurentPolynomial
    margin: int

    def to_dict(self) -> dict:
        return {
            "growth_degree": self.growth_degree,
            "period": self.period,
            "witness": self.witness.to_pairs(),
            "margin": self.margin,
        }


def growth_degree(series: LaurentSeries, period: int = 1, max_steps: Optional[int] = None) -> GrowthReport:
    """Polynomial growth degree of a series, read off inside its window.

    A series counts as eventually zero when its last nonzero coefficient is
    followed by at least ``2*period`` zeros in the window.
    """
    if period < 1:
        raise PreconditionError("period must be positive")
    steps = max_steps if max_steps is not None else (series.hi - series.lo) // (3 * period)
    s = series
    factor = LaurentPolynomial.one_minus(period)
    for k in range(steps + 1):
        last = s.last_nonzero()
        top = s.lo - 1 if last is None else last
        margin = s.hi - top
        if margin >= 2 * period:
            return GrowthReport(k - 1, period, LaurentPolynomial(s.coeffs), margin)
        s = s.mul_polynomial(factor)
    raise InconclusiveError(
        f"the series did not become eventually zero after {steps} steps "
        f"of (1 - t^{period}); extend the window"
    )


def loop_growth(A, max_degree: int) -> GrowthReport:
    """Growth degree of the loop-space homology series of ``A``."""
    evens = loop_even_degrees(A)
    period = lcm(*evens) if evens else 1
    if evens and max_degree < 3 * max(evens):
        raise InconclusiveError(f"window {max_degree} shorter than 3 * {max(evens)}")
    needed = (len(evens) + 2) * period + sum(g.codegree for g in A.gens)
    if max_degree < needed:
        max_degree = needed
    return growth_degree(loop_homology_series(A, max_degree), period, len(evens) + 1)


def growth_bound_check(hM: LaurentSeries, hN: LaurentSeries, n: int) -> bool:
    """Coefficientwise ``hM <= hN * (1 + t^n + t^2n + ...)`` on the common window."""
    if n == 0:
        raise PreconditionError("n must be nonzero")
    if n < 0:
        raise PreconditionError(
            "downward geometric expansion is not determined by a finite window"
        )
    bound = hN.div_one_minus(n)
    lo, hi = min(hM.lo, bound.lo), min(hM.hi, bound.hi)
    return all(hM[k] <= bound[k] for k in range(lo, hi + 1))


def hochschild_series_prediction(
    pX: RationalSeriesForm, sphere_codegrees: Sequence[int]
) -> RationalSeriesForm:
    """``p_X(t) * prod_i 1/(1 - t^(n_i - 1))`` for odd sphere codegrees ``n_i``."""
    for n in sphere_codegrees:
        if n % 2 == 0:
            raise PreconditionError(f"sphere codegree {n} is even; odd spheres are required")
        if n < 3:
            raise PreconditionError(f"sphere codegree {n} is below 3")
    return pX.with_denominators(n - 1 for n in sphere_codegrees)
