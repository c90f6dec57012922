import random
from fractions import Fraction

import pytest

from sullivan import linalg
from sullivan.cohomology import (
    Refusal,
    cohomology,
    cup_product,
    dense_cohomology_dims,
    hurewicz_image,
    hurewicz_witness,
    is_coboundary,
    presentation,
)
from sullivan.errors import PreconditionError, RangeError
from sullivan.model import SullivanAlgebra
from sullivan.random_models import random_model


def test_sphere_and_exterior_dims(model):
    assert cohomology(model("three_sphere"), 8).dims == [1, 0, 0, 1, 0, 0, 0, 0, 0]
    assert cohomology(model("truncated_square"), 8).dims == [1, 0, 1, 0, 0, 0, 0, 0, 0]
    assert cohomology(model("even_torus"), 6).dims == [1, 0, 2, 0, 3, 0, 4]


def test_representatives_are_cocycles_and_independent(defect_one):
    table = cohomology(defect_one, 12)
    for n in range(13):
        reps = table.representatives(n)
        assert len(reps) == table.dim(n)
        for r in reps:
            assert defect_one.is_cocycle(r)
            assert not table.is_zero_class(r)


def test_class_coordinates_round_trip(defect_one):
    table = cohomology(defect_one, 10)
    for n in range(11):
        for i, r in enumerate(table.representatives(n)):
            coords = table.class_coordinates(r)
            assert coords == [Fraction(int(i == j)) for j in range(table.dim(n))]


def test_codegree_out_of_range(defect_one):
    table = cohomology(defect_one, 4)
    with pytest.raises(RangeError):
        table.dim(5)
    with pytest.raises(RangeError):
        cohomology(defect_one, -1)


def test_parallel_jobs_match_serial(model):
    A = model("four_quadrics")
    assert cohomology(A, 12, jobs=2).dims == cohomology(A, 12).dims


def test_pure_python_backend_matches(model):
    A = model("four_quadrics")
    compiled = cohomology(A, 14, False).dims
    previous = linalg.backend()
    linalg.set_backend("python")
    try:
        assert cohomology(A, 14, False).dims == compiled
    finally:
        linalg.set_backend(previous)


def test_dense_oracle_on_random_models():
    rng = random.Random(99)
    for _ in range(20):
        A = random_model(rng, 6, 8)
        assert cohomology(A, 16, False).dims == dense_cohomology_dims(A, 16)


def test_is_coboundary_and_refusal(defect_one):
    A = defect_one
    g = is_coboundary(A, A.poly("u^2"))
    assert A.extend_differential(g) == A.poly("u^2")
    r = is_coboundary(A, A.poly("v^2"))
    assert isinstance(r, Refusal) and not r
    assert r.verify(A)
    with pytest.raises(PreconditionError):
        is_coboundary(A, A.poly("y"))


def test_cup_product_commutes_and_associates(defect_one):
    A = defect_one
    table = cohomology(A, 14)
    classes = [r for n in range(1, 8) for r in table.representatives(n)]
    for a in classes:
        for b in classes:
            if a.codegree + b.codegree > 14:
                continue
            ab = cup_product(A, table, a, b)
            ba = cup_product(A, table, b, a)
            sign = (-1) ** (a.codegree * b.codegree)
            assert ab == [sign * c for c in ba]
            for c in classes:
                n = a.codegree + b.codegree + c.codegree
                if n > 14:
                    continue
                ab_c = table.class_poly(a.codegree + b.codegree, ab) * c
                bc = cup_product(A, table, b, c)
                a_bc = a * table.class_poly(b.codegree + c.codegree, bc)
                left = table.class_coordinates(ab_c) if ab_c.terms else [0] * table.dim(n)
                right = table.class_coordinates(a_bc) if a_bc.terms else [0] * table.dim(n)
                assert left == right


def test_hurewicz_witness_and_refusal(non_noetherian):
    A = non_noetherian
    r = hurewicz_witness(A, "w")
    assert isinstance(r, Refusal)
    assert r.verify(A)
    B = SullivanAlgebra.build(
        [("u", 2), ("x", 3), ("y", 3), ("v", 6)], {"x": "u^2", "v": "-u^2*y"})
    g = hurewicz_witness(B, "v")
    assert g == B.poly("x*y")
    assert not B.extend_differential(B.generator("v") + g).terms


def test_hurewicz_image(non_noetherian, defect_one):
    img = hurewicz_image(non_noetherian, 4)
    assert img.dimension == 0 and not img.is_surjective()
    img = hurewicz_image(defect_one, 2)
    assert img.is_surjective() and img.verify(defect_one)


def test_presentation_of_truncated_square(model):
    A = model("truncated_square")
    P = presentation(A, cohomology(A, 12))
    assert [(g.name, g.codegree) for g in P.ring_gens] == [("x", 2)]
    assert [str(r) for r in P.relations] == ["x^2"]
    assert P.stable


def test_presentation_of_exterior_algebra():
    A = SullivanAlgebra.build([("x", 3), ("y", 5)])
    P = presentation(A, cohomology(A, 16))
    assert [g.name for g in P.ring_gens] == ["x", "y"]
    assert P.relations == []
    assert [str(r) for r in P.odd_squares] == ["x^2", "y^2"]


def test_presentation_names_nontrivial_classes(defect_one):
    P = presentation(defect_one, cohomology(defect_one, 12))
    rep = P.representatives["h5"]
    assert rep == defect_one.poly("u*z - v*y")


def test_cup_product_rejects_zero(defect_one):
    from sullivan.errors import DegreeError

    table = cohomology(defect_one, 8)
    with pytest.raises(DegreeError):
        cup_product(defect_one, table, defect_one.poly("0"), defect_one.poly("u"))
