import random

import pytest

from sullivan.classify import (
    HurewiczObstruction,
    SciCertificate,
    classify,
    classify_regular,
    duality,
    formal_dimension,
    gorenstein_shift,
    pd_check,
    sci_standard_form,
)
from sullivan.cohomology import cohomology
from sullivan.errors import InconclusiveError
from sullivan.model import SullivanAlgebra
from sullivan.parser import parse_model
from sullivan.random_models import random_model


def shuffled_text(A, rng):
    lines = A.to_text().splitlines()
    head = lines[0]
    gens = [ln for ln in lines if ln.startswith("gen ")]
    diffs = [ln for ln in lines if ln.startswith("d ")]
    rng.shuffle(gens)
    rng.shuffle(diffs)
    return "\n".join([head] + gens + diffs) + "\n"


@pytest.mark.parametrize("name, shift", [
    ("gorenstein_defect_one", -4),
    ("truncated_square", -2),
    ("three_sphere", -3),
    ("even_torus", 2),
])
def test_gorenstein_shift(model, name, shift):
    cert = sci_standard_form(model(name))
    assert isinstance(cert, SciCertificate)
    assert gorenstein_shift(cert) == shift


def test_standard_form_rewrites_even_generators():
    A = SullivanAlgebra.build(
        [("u", 2), ("x", 3), ("y", 3), ("v", 6)], {"x": "u^2", "v": "-u^2*y"})
    cert = sci_standard_form(A)
    assert cert.base_names == ["u", "v"]
    assert cert.fibre_names == ["x", "y"]
    B = cert.normal_form(A)
    assert B.even_cocycle_only
    assert cert.verify(A, 14)


def test_obstruction_is_falsy_and_verifiable(non_noetherian):
    ob = sci_standard_form(non_noetherian)
    assert isinstance(ob, HurewiczObstruction) and not ob
    assert ob.verify(non_noetherian)
    assert ob.describe() == "obstruction at w (dw=v*x)"
    other = SullivanAlgebra.build([("v", 2), ("x", 3), ("w", 4)], {"w": "0"})
    assert not ob.verify(other)


def test_verdicts_ignore_declaration_order(model):
    rng = random.Random(5)
    for name in ("gorenstein_defect_one", "non_noetherian", "two_stage_product", "four_quadrics"):
        A = model(name)
        first = sci_standard_form(A)
        for _ in range(4):
            B = parse_model(shuffled_text(A, rng))
            assert B == A
            again = sci_standard_form(B)
            assert type(again) is type(first)
            assert again.to_dict() == first.to_dict()


def test_certificates_replay_on_random_models():
    rng = random.Random(17)
    for _ in range(60):
        A = random_model(rng, 6, 8)
        r = sci_standard_form(A)
        assert r.verify(A)
        if isinstance(r, SciCertificate):
            assert r.codimension == len(A.odd_generators)


def test_pd_check(model):
    table = cohomology(model("truncated_square"), 10)
    assert pd_check(table, 2)
    ext = SullivanAlgebra.build([("x", 3), ("y", 3)])
    assert pd_check(cohomology(ext, 10), 6)
    # finite cohomology with finitely many generators: duality must hold
    ci = SullivanAlgebra.build([("u", 2), ("v", 2), ("x", 3), ("y", 3), ("z", 3)],
                                  {"x": "u^2", "y": "u*v", "z": "v^2"})
    table = cohomology(ci, 12)
    assert formal_dimension(table, 4) == 7
    assert pd_check(table, 7)


def test_pd_check_needs_vanishing_window(defect_one):
    with pytest.raises(InconclusiveError):
        pd_check(cohomology(defect_one, 10), 5)


def test_classify_reports(model, non_noetherian):
    T = classify(model("even_torus"), 12, 12)
    assert T.regular and T.sci and T.gci and T.labels["zci"]
    assert T.codimension == 0 and T.growth_degree == -1
    R = classify(non_noetherian, 20, 20)
    assert not (R.sci or R.gci or R.noetherian)
    assert R.obstruction.generator == "w"
    assert R.to_dict()["obstruction"]["generator"] == "w"
    assert classify_regular(model("even_torus"))
    assert not classify_regular(non_noetherian)


def test_duality_entry_point(model):
    form, verdict = duality(model("truncated_square"), 12)
    assert verdict.defect == 0 and verdict.r == 0 and verdict.a == -2
