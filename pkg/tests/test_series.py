from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sullivan.cohomology import cohomology
from sullivan.errors import InconclusiveError, PreconditionError
from sullivan.model import SullivanAlgebra
from sullivan.series import (
    FitRefusal,
    LaurentPolynomial,
    LaurentSeries,
    RationalFunction,
    RationalSeriesForm,
    functional_check,
    growth_bound_check,
    growth_degree,
    hilbert_series,
    hochschild_series_prediction,
    loop_growth,
    loop_homology_form,
    rational_fit,
    rational_fit_auto,
    t_power,
)

laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPolynomial)


def test_laurent_polynomial_basics():
    p = LaurentPolynomial({-1: 1, 2: 3})
    assert p.low == -1 and p.high == 2
    assert p.invert_variable() == LaurentPolynomial({1: 1, -2: 3})
    assert LaurentPolynomial.one_minus(2) == LaurentPolynomial({0: 1, 2: -1})
    assert (LaurentPolynomial.one_minus(1) ** 3).order_at_one() == 3
    assert LaurentPolynomial({0: 1, 5: 1}).order_at_one() == 0
    assert str(LaurentPolynomial({0: 1, 2: 1, 4: -1, 5: 1})) == "1 + t^2 - t^4 + t^5"


def test_rational_function_reduces():
    num = LaurentPolynomial.one_minus(2)
    den = LaurentPolynomial.one_minus(1)
    f = RationalFunction(num, den)
    assert f == RationalFunction(LaurentPolynomial({0: 1, 1: 1}))
    assert f.is_laurent_polynomial()
    assert not RationalFunction(1, den).is_laurent_polynomial()


@settings(max_examples=150, deadline=None)
@given(laurent, laurent, laurent)
def test_rational_function_field_laws(a, b, c):
    A, B, C = (RationalFunction(x) for x in (a, b, c))
    assert (A + B) * C == A * C + B * C
    assert A.invert_variable().invert_variable() == A
    if c:
        assert (A / C) * C == A


def test_expand_and_fit_round_trip():
    form = RationalSeriesForm(LaurentPolynomial({0: 1, 3: 1}), [2, 4])
    s = form.expand(30)
    fit = rational_fit(s, [2, 4])
    assert fit == form


def test_fit_refusal_and_inconclusive():
    s = LaurentSeries.from_list(list(range(1, 21)))
    refusal = rational_fit(s, [2])
    assert isinstance(refusal, FitRefusal) and not refusal
    short = RationalSeriesForm(LaurentPolynomial({0: 1}), [6]).expand(10)
    with pytest.raises(InconclusiveError):
        rational_fit(short, [6])


def test_fit_auto_picks_smallest_denominator(defect_one, non_noetherian):
    s = hilbert_series(cohomology(defect_one, 24, False))
    form = rational_fit_auto(s, [2, 2], 2)
    assert form.denominators == (2,)
    s = hilbert_series(cohomology(non_noetherian, 30, False))
    form = rational_fit_auto(s, [2, 4], 2)
    assert form == RationalFunction(LaurentPolynomial({0: 1, 2: 1, 3: 1}),
                                    LaurentPolynomial.one_minus(4))


def test_pole_order_counts_cancellation():
    form = RationalSeriesForm(LaurentPolynomial.one_minus(2), [2, 2])
    assert form.pole_order == 1
    assert RationalSeriesForm(LaurentPolynomial({0: 1}), []).pole_order == 0


def test_series_json_triples():
    s = LaurentSeries.from_list([1, 0, Fraction(2)])
    assert s.to_triples() == [[0, 1, 1], [2, 2, 1]]
    assert LaurentSeries.from_triples(s.to_triples(), 0, 2) == s


def test_defect_zero_for_polynomial_ring():
    form = RationalSeriesForm(LaurentPolynomial({0: 1}), [2])
    v = functional_check(form, 6)
    assert (v.defect, v.r, v.a) == (0, 1, 1)


def test_defect_zero_for_finite_cohomology():
    # Poincare polynomial 1 + t^3 of the three-sphere
    form = RationalSeriesForm(LaurentPolynomial({0: 1, 3: 1}), [])
    v = functional_check(form, 6)
    assert (v.defect, v.r, v.a) == (0, 0, -3)


def test_defect_one_for_correction_term():
    form = RationalSeriesForm(LaurentPolynomial({0: 1, 2: 1, 4: -1, 5: 1}), [2])
    v = functional_check(form, 8)
    assert (v.defect, v.r, v.a) == (1, 1, -4)
    assert v.delta == t_power(-2)
    assert v.alternative_holds is False


def test_no_duality():
    form = RationalSeriesForm(LaurentPolynomial({0: 1, 2: 1, 3: 1}), [4])
    v = functional_check(form, 8)
    assert v.defect is None and not v.detected


def test_loop_forms():
    A = SullivanAlgebra.build([("x", 3)])
    assert loop_homology_form(A.gens) == RationalFunction(1, LaurentPolynomial.one_minus(2))
    T = SullivanAlgebra.build([("u", 2), ("v", 2)])
    assert loop_homology_form(T.gens).expand(6).coefficients() == [1, 2, 1, 0, 0, 0, 0]
    assert loop_growth(T, 12).growth_degree == -1
    assert loop_growth(A, 12).growth_degree == 0


def test_growth_degree_of_polynomial_growth():
    s = RationalSeriesForm(LaurentPolynomial({0: 1}), [1, 1, 1]).expand(30)
    g = growth_degree(s)
    assert g.growth_degree == 2
    with pytest.raises(InconclusiveError):
        growth_degree(s, 1, max_steps=1)


def test_growth_bound_check():
    hN = LaurentSeries.from_list([1, 1, 0, 0, 0, 0])
    hM = LaurentSeries.from_list([1, 1, 1, 1, 1, 1])
    assert growth_bound_check(hM, hN, 2)
    assert not growth_bound_check(hM, hN, 3)
    with pytest.raises(PreconditionError):
        growth_bound_check(hM, hN, 0)
    with pytest.raises(PreconditionError):
        growth_bound_check(hM, hN, -2)


def test_hochschild_prediction_shape():
    pX = RationalSeriesForm(LaurentPolynomial({0: 1, 2: 1}), [])
    pred = hochschild_series_prediction(pX, [3, 5])
    assert pred.denominators == (2, 4)
    with pytest.raises(PreconditionError):
        hochschild_series_prediction(pX, [4])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.lists(st.integers(1, 4), max_size=3))
def test_fit_recovers_any_form(num, dens):
    form = RationalSeriesForm(LaurentPolynomial(dict(enumerate(num))), dens)
    s = form.expand(len(num) + 4 * max(dens, default=1) + 4)
    fit = rational_fit(s, dens)
    assert fit == form
