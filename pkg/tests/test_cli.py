import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from toricvol.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "blowup": write(tmp_path, "blowup.json", {"rank": 3, "rays": [[1, 0, 1], [0, 1, 1], [-1, -1, 1], [1, 1, 1]], "name": "blowup"}),
        "a2": write(tmp_path, "a2.json", {"rank": 2, "rays": [[1, 0], [0, 1]]}),
        "a3": write(tmp_path, "a3.json", {"rank": 3, "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}),
        "halfplane": write(tmp_path, "half.json", {"rank": 2, "rays": [[1, 0], [-1, 0], [0, 1]]}),
        "x2y3": write(tmp_path, "x2y3.json", {"generators": [[2, 0], [0, 3]]}),
        "m3": write(tmp_path, "m3.json", {"generators": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}),
        "x": write(tmp_path, "x.json", {"generators": [[1, 0]]}),
        "tmp": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv) + ["--deterministic"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_check(capsys, files):
    code, rep = run(capsys, "check", files["a3"])
    assert code == 0 and rep["w"] == ["1", "1", "1"] and rep["gorenstein_index"] == 1
    code, rep = run(capsys, "check", files["blowup"])
    assert code == 0 and rep["w"] == ["0", "0", "1"]
    assert sorted(map(tuple, rep["dual_rays"])) == sorted([(-1, 0, 1), (-1, 2, 1), (0, -1, 1), (2, -1, 1)])


def test_check_invalid(capsys, files):
    code, rep = run(capsys, "check", files["halfplane"])
    assert code == 2 and rep["error"] == "NotStronglyConvex"


def test_malformed_spec(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", {"rays": [[1, 0], [0, "a"]]})
    code, rep = run(capsys, "check", bad)
    assert code == 2
    code, rep = run(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 2


def test_rank_cap(capsys, tmp_path, monkeypatch):
    g = write(tmp_path, "a3.json", {"rank": 3, "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    monkeypatch.setenv("NVOL_MAX_RANK", "2")
    code, rep = run(capsys, "check", g)
    assert code == 5 and rep["error"] == "UnsupportedRank"
    # the cap can only go down
    monkeypatch.setenv("NVOL_MAX_RANK", "9")
    g7 = write(tmp_path, "a7.json", {"rank": 7, "rays": [[int(i == j) for j in range(7)] for i in range(7)]})
    code, _ = run(capsys, "check", g7)
    assert code == 5


def test_lct_and_mult(capsys, files):
    code, rep = run(capsys, "lct", files["a2"], files["x2y3"])
    assert code == 0 and rep["lct"]["exact"] == "5/6"
    assert rep["witness"] == ["1/2", "1/3"]
    code, rep = run(capsys, "mult", files["a2"], files["x2y3"])
    assert code == 0 and rep["multiplicity"]["exact"] == "6"
    code, rep = run(capsys, "lct", files["a3"], files["m3"])
    assert rep["lct"]["exact"] == "3"
    code, rep = run(capsys, "mult", files["a3"], files["m3"])
    assert rep["multiplicity"]["exact"] == "1"


def test_mult_not_primary(capsys, files):
    code, rep = run(capsys, "mult", files["a2"], files["x"])
    assert code == 3 and rep["error"] == "NotPrimary"


def test_ideal_germ_mismatch(capsys, files, tmp_path):
    ideal = write(tmp_path, "i.json", {"germ": {"rays": [[1, 0], [1, 3]]}, "generators": [[1, 0]]})
    code, rep = run(capsys, "lct", files["a2"], ideal)
    assert code == 3 and rep["error"] == "GermMismatch"


def test_generator_outside_dual_cone(capsys, files, tmp_path):
    ideal = write(tmp_path, "i.json", {"generators": [[1, 0, 0]]})
    code, rep = run(capsys, "lct", files["blowup"], ideal)
    assert code == 2


def test_nvol_eval(capsys, files):
    code, rep = run(capsys, "nvol-eval", files["blowup"], "--u", "1315/10000,1315/10000,1")
    assert code == 0
    assert abs(rep["nvol"]["float"] - (46 + 13 * math.sqrt(13)) / 12) < 2e-4
    assert Fraction(rep["nvol"]["exact"]) == Fraction(rep["A"]["exact"]) ** 3 * Fraction(rep["vol"]["exact"])
    assert rep["A"]["exact"] == "1"


def test_nvol_eval_boundary(capsys, files):
    code, rep = run(capsys, "nvol-eval", files["a3"], "--u", "1,0,1")
    assert code == 4 and rep["error"] == "Unbounded"


def test_nvol_min(capsys, files):
    code, rep = run(capsys, "nvol-min", files["a3"])
    assert code == 0
    assert abs(rep["report"]["nvol_star"] - 27) < 1e-6
    assert rep["probe"]["direction"] == [1, 1, 1]
    code, rep = run(capsys, "nvol-min", files["a2"], "--starts", "2", "--seed", "7", "--tol", "1e-9", "--max-evals", "5000")
    assert rep["config"] == {"tol": 1e-9, "starts": 2, "seed": 7, "max_evals": 5000}
    assert rep["report"]["starts"] == 2


def test_converge(capsys, files):
    code, rep = run(capsys, "converge", files["a2"], "--u", "1,1", "--max-m", "6")
    assert code == 0 and rep["all_lower_bounds_hold"]
    ratios = [Fraction(r["colength_ratio"]["exact"]) for r in rep["table"]]
    assert ratios == sorted(ratios, reverse=True) and all(r >= 1 for r in ratios)
    assert ratios == [Fraction(m + 1, m) for m in range(1, 7)]


def test_lct_seq(capsys, files):
    code, rep = run(capsys, "lct-seq", files["a2"], "--ideal", files["x2y3"], "--max-m", "4")
    assert code == 0 and rep["normalized_multiplicity"]["exact"] == "25/6"
    code, rep = run(capsys, "lct-seq", files["blowup"], "--u", "1/3,1/5,1", "--max-m", "6")
    assert code == 0
    assert Fraction(rep["normalized_multiplicity"]["exact"]) <= Fraction(rep["nvol"]["exact"]) * Fraction(105, 100)


def test_round_trip_exact_values(capsys, files):
    code, rep = run(capsys, "nvol-eval", files["blowup"], "--u", "1/7,2/9,1")
    text = json.dumps(rep)
    again = json.loads(text)
    for key in ("A", "vol", "nvol"):
        s = again[key]["exact"]
        assert "." not in s
        assert str(Fraction(s)) == s
        assert float(Fraction(s)) == again[key]["float"]


def test_determinism_and_timestamp(capsys, files, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["nvol-min", files["blowup"], "--deterministic", "--starts", "3", "--output", str(out1)]) == 0
    assert main(["nvol-min", files["blowup"], "--deterministic", "--starts", "3", "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert "timestamp" not in json.loads(out1.read_text())
    main(["check", files["a2"]])
    assert "timestamp" in json.loads(capsys.readouterr().out)


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "toricvol.cli", "check", files["halfplane"], "--deterministic"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["error"] == "NotStronglyConvex"
