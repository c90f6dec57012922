import json
import subprocess
import sys

import pytest

from sullivan.cli import bundled_models, main
from sullivan.report import parse_report, series_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_models_listing(capsys):
    code, out, _ = run(capsys, "models")
    assert code == 0
    assert "gorenstein_defect_one" in out.split()
    assert set(out.split()) == set(bundled_models())


def test_cohomology_text(capsys):
    code, out, _ = run(capsys, "cohomology", "gorenstein_defect_one", "--max-codegree", "8")
    assert code == 0
    assert "dims: 1,0,2,0,1,1,1,1,1" in out
    assert "input: sha256:" in out


def test_machine_output_round_trips(capsys):
    code, out, _ = run(capsys, "hilbert", "truncated_square", "--max-codegree", "6",
                       "--format", "machine")
    assert code == 0
    report = parse_report(out)
    data = json.loads(out)
    assert list(data) == sorted(data)
    assert data["warnings"] == []
    assert data["results"]["series"]["terms"] == [[0, 1, 1], [2, 1, 1]]
    assert series_from_json(report.results["series"])[2] == 1
    assert parse_report(json.dumps(report.to_dict())) == report


def test_output_is_byte_identical(capsys):
    runs = [run(capsys, "unravel", "two_stage_product", "--format", "machine")[1]
            for _ in range(2)]
    assert runs[0] == runs[1]


def test_refusal_exit_code(capsys):
    code, out, _ = run(capsys, "standard-form", "non_noetherian")
    assert code == 1
    assert "obstruction at w (dw=v*x)" in out
    code, out, _ = run(capsys, "standard-form", "non_noetherian", "--format", "machine")
    assert json.loads(out)["results"]["refusal_ok"] is True


def test_classify_and_unravel(capsys):
    code, out, _ = run(capsys, "classify", "gorenstein_defect_one")
    assert code == 0 and "gorenstein shift: -4" in out
    code, out, _ = run(capsys, "unravel", "triple_product")
    assert code == 0 and "verified: yes" in out and "length <= 5" in out


def test_duality_and_prediction(capsys):
    code, out, _ = run(capsys, "duality", "gorenstein_defect_one", "--denominator", "2")
    assert code == 0
    assert "defect 1, r=1, a=-4" in out
    assert "delta(t) = t^(-2)" in out
    code, out, _ = run(capsys, "hochschild-predict", "gorenstein_defect_one")
    assert code == 0 and "(1 - t^2)^3" in out
    code, _, _ = run(capsys, "hochschild-predict", "non_noetherian")
    assert code == 1


def test_presentation_and_loop(capsys):
    code, out, _ = run(capsys, "presentation", "gorenstein_defect_one", "--max-codegree", "12")
    assert code == 0 and "generators: u(2), v(2), h5(5)" in out
    assert "warning: stability is a heuristic" in out
    code, out, _ = run(capsys, "loop-homology", "gorenstein_defect_one")
    assert code == 0 and "growth degree: 1" in out


@pytest.mark.parametrize("argv", [
    ["cohomology", "no_such_model"],
    ["frobnicate", "three_sphere"],
    ["cohomology"],
    ["cohomology", "three_sphere", "--max-codegree", "-1"],
    ["hilbert", "three_sphere", "--denominator", "0"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_bad_model_file(tmp_path, capsys):
    path = tmp_path / "bad.sul"
    path.write_text("algebra X\ngen v 2\ngen w 3\nd w = v\n")
    code, _, err = run(capsys, "cohomology", str(path))
    assert code == 2
    assert "line 4" in err


def test_model_file_path(tmp_path, capsys):
    path = tmp_path / "s5.sul"
    path.write_text("algebra S\ngen x 5\n")
    code, out, _ = run(capsys, "cohomology", str(path), "--max-codegree", "6")
    assert code == 0 and "dims: 1,0,0,0,0,1,0" in out


def test_self_test(capsys):
    code, out, _ = run(capsys, "verify", "--cases", "5", "--seed", "3")
    assert code == 0 and "all passed" in out
    code, out, _ = run(capsys, "verify", "gorenstein_defect_one", "--cases", "3")
    assert code == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sullivan.cli", "standard-form", "non_noetherian"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert "obstruction at w" in proc.stdout
