from __future__ import annotations

import json
from pathlib import Path

import pytest

from ktiling.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_verify_oct7(capsys):
    code, doc, _ = run(capsys, "verify", CORPUS / "oct7.json", "--lambda", CORPUS / "z2.json", "--trials", 200)
    assert code == 0
    assert (doc["result"]["verdict"], doc["result"]["k"]) == ("Verified", 7)
    assert doc["manifest"]["seed"] == 42
    assert set(doc["manifest"]["inputs"]) == {"oct7.json", "z2.json"}


def test_verify_exact_with_svg(capsys, tmp_path):
    svg = tmp_path / "o.svg"
    code, doc, _ = run(
        capsys, "verify", CORPUS / "oct7.json", "--lambda", CORPUS / "z2.json", "--exact-2d", "--svg", svg
    )
    assert code == 0 and doc["result"]["verdict"] == "ExactVerified"
    assert svg.read_text().startswith("<svg") and svg.read_text().count("<polygon") > 2


def test_refuted_triangle_exits_one(capsys):
    code, doc, _ = run(capsys, "verify", CORPUS / "triangle.json", "--lambda", CORPUS / "z2.json", "--exact-2d")
    assert code == 1 and doc["result"]["verdict"] == "Refuted"
    w = doc["result"]["witness"]
    assert {w["count1"], w["count2"]} == {0, 1}


def test_check_symmetry(capsys):
    code, doc, _ = run(capsys, "check-symmetry", CORPUS / "octahedron.json")
    assert code == 1 and doc["result"]["overall"] == "FailFacet"
    code, doc, _ = run(capsys, "check-symmetry", CORPUS / "cube.json")
    assert code == 0 and doc["result"]["overall"] == "Pass"


def test_compute_k(capsys):
    code, doc, _ = run(capsys, "compute-k", CORPUS / "oct7.json")
    assert code == 0 and (doc["result"]["N"], doc["result"]["k"]) == (2, 28)
    code, doc, _ = run(capsys, "compute-k", CORPUS / "simplex3.json")
    assert code == 1


def test_boundary_check(capsys):
    code, doc, _ = run(
        capsys, "boundary-check", CORPUS / "oct7.json", "--lambda", CORPUS / "z2.json", "--frame", "1,1;1,-1", "--trials", 5
    )
    assert code == 0
    (frame,) = doc["result"]["frames"]
    assert frame["signedVolume"] == "0" and all(s["sum"] == 0 for s in frame["samples"])


def test_boundary_check_detects_triangle(capsys):
    code, doc, _ = run(
        capsys, "boundary-check", CORPUS / "triangle.json", "--lambda", CORPUS / "z2.json", "--frame", "1,0", "--trials", 3
    )
    assert code == 1 and doc["result"]["frames"][0]["signedVolume"] == "-1"


def test_angle_sum(capsys):
    code, doc, _ = run(capsys, "angle-sum", CORPUS / "oct7.json", "--lambda", CORPUS / "z2.json", "--v", "0,0")
    assert code == 0 and doc["result"]["sum"] == 7.0


def test_fourier_with_oracle(capsys):
    code, doc, _ = run(capsys, "fourier", CORPUS / "oct7.json", "--xi", "1/3,1/5", "--oracle")
    assert code == 0 and doc["result"]["oracle"]["agrees"]


def test_fixtures_emit(capsys, tmp_path):
    code, doc, _ = run(capsys, "fixtures", "--emit", tmp_path)
    assert code == 0 and "oct7.json" in doc["result"]["written"]
    assert (tmp_path / "oct7.json").exists()


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["fourier", "oct7.json", "--xi", "0.5,0"], "xi[0]"),
        (["fourier", "oct7.json", "--xi", "1,2,3"], "xi"),
        (["angle-sum", "oct7.json", "--lambda", "z3.json", "--v", "0,0"], "lambda"),
        (["boundary-check", "oct7.json", "--lambda", "z2.json", "--frame", "1,0;1,1"], "frame"),
        (["check-symmetry", "missing.json"], "missing.json"),
    ],
)
def test_input_errors_exit_two(capsys, argv, needle):
    argv = [str(CORPUS / a) if a.endswith(".json") else a for a in argv]
    code = main(argv)
    captured = capsys.readouterr()
    assert code == 2
    assert needle in json.loads(captured.out)["result"]["error"]["message"]
    assert needle in captured.err


def test_bad_float_file(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"dim": 2, "vertices": [[0, 0], [1.5, 0], [0, 1]]}))
    code = main(["check-symmetry", str(p)])
    assert code == 2
    assert "vertices[1][0]" in capsys.readouterr().err


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["tile-everything"])
    assert info.value.code == 2


def test_byte_identical_runs(capsys):
    argv = ["boundary-check", CORPUS / "oct7.json", "--lambda", CORPUS / "z2.json", "--trials", 3]
    _, _, first = run(capsys, *argv)
    _, _, second = run(capsys, *argv)
    assert first == second
    argv = ["angle-sum", CORPUS / "cell24.json", "--lambda", CORPUS / "z4.json", "--v", "0,0,0,0"]
    _, _, first = run(capsys, *argv)
    _, _, second = run(capsys, *argv)
    assert first == second
