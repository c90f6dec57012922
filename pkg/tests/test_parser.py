import pytest

from sullivan.errors import ParseError
from sullivan.gca import Generator, GeneratorSet
from sullivan.parser import parse_model, parse_poly

GOOD = """
# a comment line
algebra X
gen v 2
gen x 3
gen w 4   # trailing comment
d w = v*x
"""


def test_parse_basic_model():
    A = parse_model(GOOD)
    assert A.name == "X"
    assert A.gens.names == ("v", "x", "w")
    assert A.d("w") == A.generator("v") * A.generator("x")
    assert not A.d("x").terms


def test_round_trip_through_text(model):
    for name in ("gorenstein_defect_one", "two_stage_product", "quadratic_sphere_7"):
        A = model(name)
        assert parse_model(A.to_text()) == A


def test_written_order_gives_koszul_sign():
    gens = GeneratorSet([Generator("x", 3), Generator("y", 3)])
    assert parse_poly("y*x", gens) == -parse_poly("x*y", gens)


def test_rational_coefficients_and_primes():
    gens = GeneratorSet([Generator("u", 2), Generator("u'", 2)])
    p = parse_poly("-3/4*u*u' + 2*u^2 - u'^2", gens)
    assert str(p) == "2*u^2 - 3/4*u*u' - u'^2"
    assert parse_poly("0", gens) == parse_poly("u - u", gens)


@pytest.mark.parametrize("text, line, column", [
    ("gen v 2\n", 1, 1),
    ("algebra X\ngen v 1\n", 2, 7),
    ("algebra X\ngen v 2\ngen v 4\n", 3, 5),
    ("algebra X\ngen v 2\nd q = v\n", 3, 3),
    ("algebra X\ngen v 2\ngen x 3\nd x = v*y\n", 4, 9),
    ("algebra X\ngen v 2\ngen x 3\nd x = v $ v\n", 4, 9),
    ("algebra X\ngen v 2\ngen x 3\nd x = v^2 +\n", 4, 12),
    ("algebra X\ngen d 2\n", 2, 5),
])
def test_errors_carry_line_and_column(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_model(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}" in str(info.value)


def test_degree_mismatch_is_a_parse_error():
    with pytest.raises(ParseError) as info:
        parse_model("algebra X\ngen v 2\ngen w 3\nd w = v\n")
    assert info.value.line == 4
    assert info.value.witness == "w"


def test_invalid_differential_is_rejected():
    text = "algebra X\ngen u 2\ngen x 3\ngen a 4\nd x = u^2\nd a = u*x\n"
    with pytest.raises(ParseError) as info:
        parse_model(text)
    assert info.value.line == 6 and info.value.witness == "a"
    assert "d(d(a))" in str(info.value)
    assert parse_model(text, check=False).gens.names == ("u", "x", "a")


def test_empty_file():
    with pytest.raises(ParseError):
        parse_model("# nothing here\n")
