"""End-to-end tests of the command-line interface."""

import json

import pytest

from finegrading.cli import main
from finegrading.superalg import load_algebra

FANO_CONFIG = """\
Z_2 x Z_2 x Z_2
([];[1,0,0])
([];[0,1,0])
([];[0,0,1])
([];[1,1,0])
([];[1,0,1])
([];[0,1,1])
([];[1,1,1])
"""


def test_theorem_check_g3(capsys):
    assert main(["theorem-check", "g3"]) == 0
    out = capsys.readouterr().out
    assert "axioms-g3" in out
    assert "3/3 checks passed" in out


def test_theorem_check_d21a_omega_json(tmp_path):
    dest = tmp_path / "report.json"
    code = main([
        "theorem-check", "d21a", "--alpha", "z^4",
        "--format", "json", "--out", str(dest),
    ])
    assert code == 0
    payload = json.loads(dest.read_text())
    assert payload["command"] == "theorem-check d21a"
    names = [r["name"] for r in payload["records"]]
    assert names == sorted(names)
    assert "d21a-z-z3" in names
    assert "groups-q8cubed-mod-k" in names
    for r in payload["records"]:
        assert {"name", "status", "expected", "actual"} <= set(r)
        assert r["status"] == "pass"


@pytest.mark.parametrize(
    "argv",
    [
        ["theorem-check", "d21a", "--alpha", "-1"],
        ["theorem-check", "d21a", "--alpha", "0"],
        ["theorem-check", "d21a", "--alpha", "not*a(scalar"],
        ["theorem-check", "e8"],
        ["theorem-check", "g3", "--alpha", "2"],
        ["theorem-check", "d21a", "--model", "tkk"],
        ["build", "k10"],
    ],
    ids=["alpha-minus1", "alpha-0", "alpha-garbage", "unknown-target",
         "alpha-for-g3", "model-for-d21a", "build-without-out"],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 2


def test_build_k10_roundtrip(tmp_path):
    dest = tmp_path / "k10.alg"
    assert main(["build", "k10", "--out", str(dest)]) == 0
    assert load_algebra(str(dest)).dim == 10


def test_build_f4_tkk(tmp_path):
    dest = tmp_path / "f4.alg"
    assert main(["build", "f4", "--model", "tkk", "--out", str(dest)]) == 0
    assert load_algebra(str(dest)).dim == 40


def test_build_d21a_at_one(tmp_path):
    dest = tmp_path / "d21.alg"
    assert main(["build", "d21a", "--alpha", "1", "--out", str(dest)]) == 0
    assert load_algebra(str(dest)).dim == 17


def test_clifford_class_fano(tmp_path, capsys):
    cfg = tmp_path / "fano.cfg"
    cfg.write_text(FANO_CONFIG)
    assert main(["clifford-class", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert "table F, algebra F" in out
    assert "m=0 r=3" in out
    assert "normalization_trace" in out


def test_clifford_class_json(tmp_path):
    cfg = tmp_path / "fano.cfg"
    cfg.write_text(FANO_CONFIG)
    dest = tmp_path / "out.json"
    code = main(["clifford-class", str(cfg), "--format", "json",
                 "--out", str(dest)])
    assert code == 0
    payload = json.loads(dest.read_text())
    assert payload["disagreement"] is False
    assert payload["case"] == "m=0 r=3"
    rec = payload["records"][0]
    assert {"name", "status", "expected", "actual"} <= set(rec)


def test_clifford_class_parse_error_has_line_number(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("Z_2 x Z_2\n([];[1,0])\nnonsense\n")
    with pytest.raises(SystemExit) as err:
        main(["clifford-class", str(cfg)])
    assert err.value.code == 1
    assert ":3:" in capsys.readouterr().err


def test_clifford_class_rejects_bad_group_line(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("Z_2 & Z_2\n([];[1,0])\n")
    with pytest.raises(SystemExit) as err:
        main(["clifford-class", str(cfg)])
    assert err.value.code == 1
    assert ":1:" in capsys.readouterr().err


def test_clifford_class_even_dimension_is_error(tmp_path, capsys):
    cfg = tmp_path / "even.cfg"
    cfg.write_text("Z_2\n([];[1])\n([];[1])\n")
    assert main(["clifford-class", str(cfg)]) == 1
    out = capsys.readouterr().out
    assert "ERROR" in out


def test_grading_report_d21a(capsys):
    assert main(["grading-report", "d21a"]) == 0
    out = capsys.readouterr().out
    assert "d21a-z-z2^2-ideal3" in out
    assert "5/5 checks passed" in out
