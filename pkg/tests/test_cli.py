import json
import subprocess
import sys

import pytest

from eisenlift.cli import run
from eisenlift.qseries import QSeries
from eisenlift.realquad import QuadraticData, quad_data
from eisenlift.modsym import MatZ
from eisenlift.thetalift import RelationReport, lift_cycle, verify_triangle


def test_expand_text():
    code, out = run(["expand", "--N", "5", "--series", "G", "--k", "1", "--r", "1", "--prec", "5"])
    assert code == 0 and out == "3/10 + q + q^2 + q^3"


def test_expand_json_round_trip():
    code, out = run(["expand", "--N", "4", "--series", "E", "--k", "1", "--p", "0", "--q", "1", "--prec", "4", "--format", "json"])
    assert code == 0
    s = QSeries.from_dict(json.loads(out)["series"])
    assert not s.is_rational()


def test_lift_json():
    code, out = run(["lift", "--N", "4", "--matrix", "1,1,4,5", "--prec", "40", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert QSeries.from_dict(doc["series"]) == lift_cycle(MatZ(1, 1, 4, 5), 4, 40)
    assert QSeries.from_dict(doc["series"]).is_rational()
    assert doc["decomposition"]["kind"] == "hyperbolic"
    assert [c["coeff"] for c in doc["decomposition"]["caps"]] == [3, 2, 2, 2]


def test_verify_triangle_cli():
    code, out = run(["verify-triangle", "--N", "5", "--n", "1,1,3", "--prec", "60", "--format", "json"])
    assert code == 0
    assert RelationReport.from_dict(json.loads(out)) == verify_triangle(5, 1, 1, 3, 60)
    code, _ = run(["verify-triangle", "--N", "4", "--n", "1,1,2", "--prec", "10"])
    assert code == 2


def test_verify_polygon_cli():
    code, out = run(["verify-polygon", "--N", "5", "--cusps", "4/-9,1/-2,6/-13,5/-11", "--prec", "12"])
    assert code == 0 and "verified" in out
    code, out = run(["verify-polygon", "--N", "5", "--cusps", "1/1,3/1,3/2", "--prec", "12"])
    assert code == 2 and "side" in out


def test_quad_cli():
    code, out = run(["quad", "--N", "4", "--matrix", "1,1,4,5", "--format", "json"])
    assert code == 0
    assert QuadraticData.from_dict(json.loads(out)) == quad_data(MatZ(1, 1, 4, 5), 4)


def test_hecke_and_decompose():
    code, out = run(["hecke", "--N", "5", "--n", "2"])
    assert code == 0 and out.splitlines() == ["1,0,0,2", "1,1,0,2", "26,5,10,2"]
    code, out = run(["decompose", "--N", "4", "--matrix", "1,0,4,1"])
    assert code == 0 and "cap -4 * [0/1]" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["lift", "--N", "4", "--matrix", "1,2,3"],
        ["lift", "--N", "4", "--matrix", "2,0,0,1"],
        ["lift", "--N", "5", "--matrix", "1,1,4,5"],
        ["lift", "--N", "3", "--matrix", "1,1,3,4"],
        ["lift", "--N", "4", "--matrix", "0,-1,1,0"],
        ["expand", "--N", "5", "--series", "E", "--k", "1", "--p", "0", "--q", "0"],
        ["expand", "--N", "5", "--series", "Nope"],
        ["expand", "--N", "5", "--series", "G", "--k", "1", "--r", "1", "--prec", "0"],
        ["quad", "--N", "4", "--matrix", "1,1,0,1"],
        ["bogus"],
    ],
)
def test_invalid_input_exit_2(argv):
    code, out = run(argv)
    assert code == 2
    assert "\n" not in out


def test_determinism():
    argv = ["lift", "--N", "5", "--matrix", "1,1,5,6", "--prec", "15", "--format", "json"]
    assert run(argv) == run(argv)


def test_cache_dir(tmp_path):
    argv = ["expand", "--N", "5", "--series", "H", "--p", "1", "--q", "0", "--prec", "6", "--cache-dir", str(tmp_path)]
    first = run(argv)
    assert list(tmp_path.glob("*.json"))
    assert run(argv) == first


def test_selftest_and_entry_point():
    code, out = run(["selftest", "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and all(c["passed"] for c in doc["checks"])
    proc = subprocess.run(
        [sys.executable, "-m", "eisenlift.cli", "selftest", "--jobs", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == [
        ("PASS " if c["passed"] else "FAIL ") + f"{c['name']}: {c['detail']}" for c in doc["checks"]
    ]
