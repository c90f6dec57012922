import random
from fractions import Fraction

import pytest

from sullivan.cohomology import cohomology
from sullivan.errors import (
    DegreeError,
    PreconditionError,
    ShapeError,
    StructuralError,
    ValidationError,
)
from sullivan.model import (
    SullivanAlgebra,
    adjoin_odd,
    apply_iso,
    change_of_variables,
    drop_odd,
    occurrences,
    odd_sphere_rewrite,
    quotient_even_cocycle,
    split_quadratic,
)
from sullivan.random_models import random_model, random_poly


def test_leibniz_on_products(defect_one):
    A = defect_one
    y, z, u = A.generator("y"), A.generator("z"), A.generator("u")
    d = A.extend_differential
    assert d(y * z) == d(y) * z - y * d(z)
    assert d(u * y) == u * d(y)


def test_validation_flags():
    A = SullivanAlgebra.build([("u", 2), ("x", 3)], {"x": "u^2"})
    report = A.validate()
    assert report.valid and report.pure and report.minimal
    bad = SullivanAlgebra.build([("u", 2), ("x", 3), ("a", 4)], {"x": "u^2", "a": "u*x"})
    report = bad.validate()
    assert not report.d_squared_zero
    assert report.offenders == ["a"]
    with pytest.raises(ValidationError) as info:
        bad.check()
    assert info.value.report is not None


def test_nonminimal_is_reported():
    C = SullivanAlgebra.build([("u", 4), ("x", 3)], {"x": "u"})
    assert not C.validate().minimal


def test_differential_degree_is_checked():
    with pytest.raises(DegreeError):
        SullivanAlgebra.build([("v", 2), ("x", 3), ("w", 4)], {"w": "v^2"})
    with pytest.raises(StructuralError):
        SullivanAlgebra.build([("v", 2)], {"q": "v"})


def test_quotient_even_cocycle():
    A = SullivanAlgebra.build([("u", 2), ("v", 2), ("x", 3)], {"x": "u^2 + u*v"})
    B = quotient_even_cocycle(A, "v")
    assert B.gens.names == ("u", "x")
    assert B.d("x") == B.poly("u^2")
    with pytest.raises(PreconditionError):
        quotient_even_cocycle(A, "x")


def test_quotient_requires_cocycle(non_noetherian):
    with pytest.raises(PreconditionError):
        quotient_even_cocycle(non_noetherian, "w")


def test_adjoin_odd(defect_one):
    B = adjoin_odd(defect_one, "v^2", "s")
    assert B.gens["s"].codegree == 3
    assert B.validate().valid
    with pytest.raises(PreconditionError):
        adjoin_odd(defect_one, "u*z")
    with pytest.raises(PreconditionError):
        adjoin_odd(defect_one, "y*z - y*z")
    C = adjoin_odd(defect_one, 0, "e", codegree=7)
    assert C.gens["e"].codegree == 7 and not C.d("e").terms


def test_adjoin_rejects_non_cocycle(non_noetherian):
    with pytest.raises(PreconditionError):
        adjoin_odd(non_noetherian, "v*w")


def test_drop_odd_and_occurrences(defect_one):
    assert occurrences(defect_one, "u") == ["y", "z"]
    B = drop_odd(defect_one, "z")
    assert B.gens.names == ("u", "v", "y")
    A = SullivanAlgebra.build([("v", 2), ("x", 3), ("w", 4)], {"w": "v*x"})
    with pytest.raises(PreconditionError) as info:
        drop_odd(A, "x")
    assert info.value.witness == "w"


def test_change_of_variables_round_trip():
    A = SullivanAlgebra.build([("u", 2), ("v", 4), ("x", 5)], {"v": "0", "x": "v*u - u^3"})
    assert A.validate().valid
    B, record = change_of_variables(A, "v", "-u^2", "v1", rewrite=True)
    assert record.new == "v1"
    assert B.d("x") == B.poly("u*v1")
    with pytest.raises(PreconditionError):
        change_of_variables(A, "v", "-u^2")
    dims = cohomology(A, 14, False).dims
    assert cohomology(B, 14, False).dims == dims
    C = apply_iso(A, record)
    assert C == B


def test_change_of_variables_requires_cocycle(non_noetherian):
    with pytest.raises(PreconditionError):
        change_of_variables(non_noetherian, "w", "v^2")
    with pytest.raises(DegreeError):
        change_of_variables(non_noetherian, "w", "v")


def test_split_quadratic(model):
    A = model("quadratic_sphere")
    c, a, b = split_quadratic(A.d("y"), "x")
    assert c == 1
    assert a == A.poly("u")
    assert b == A.poly("v^2")


def test_odd_sphere_rewrite_shapes(model):
    A = model("quadratic_sphere")
    B, record = odd_sphere_rewrite(A, "x", "y")
    assert record.g == A.poly("u").scale(Fraction(1, 2))
    assert not B.d("x'").terms
    assert B.d("y") == B.poly("x'^2 + v^2 - 1/4*u^2")
    with pytest.raises(PreconditionError):
        odd_sphere_rewrite(A, "y", "x")


def test_odd_sphere_rewrite_rejects_cubic():
    A = SullivanAlgebra.build([("x", 2), ("y", 5)], {"y": "x^3"})
    with pytest.raises(PreconditionError):
        odd_sphere_rewrite(A, "x", "y")
    C = SullivanAlgebra.build([("u", 2), ("x", 2), ("y", 3)], {"y": "u*x"})
    with pytest.raises(ShapeError):
        odd_sphere_rewrite(C, "x", "y")


def test_subalgebra_must_be_closed(non_noetherian):
    with pytest.raises(PreconditionError):
        non_noetherian.subalgebra(["w", "v"])
    assert non_noetherian.below(4).gens.names == ("v", "x")


def test_random_models_are_valid_and_d_squares_to_zero():
    rng = random.Random(3)
    for _ in range(100):
        A = random_model(rng, 6, 9)
        assert A.validate().valid
        p = random_poly(rng, A.gens, rng.randint(2, 12))
        assert not A.extend_differential(A.extend_differential(p)).terms
