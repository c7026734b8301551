from __future__ import annotations

import json

import pytest

from frobkit.cli import main

E8 = {"char": 7, "vars": ["x", "y", "z"],
      "relations": ["x^2 + y^3 + z^5"], "dim": 2}
REGULAR2 = {"char": 2, "vars": ["x", "y"], "relations": [], "dim": 2}
NODE = {"char": 5, "vars": ["x", "y"], "relations": ["x*y"], "dim": 1}
MF_X = {"f": "x*y", "size": 1, "phi": [["x"]], "psi": [["y"]]}
MF_Y = {"f": "x*y", "size": 1, "phi": [["y"]], "psi": [["x"]]}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, payload in [("e8", E8), ("regular2", REGULAR2), ("node", NODE),
                          ("mfx", MF_X), ("mfy", MF_Y)]:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        paths[name] = str(path)
    return paths


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_hk_report(files, capsys):
    code, out, _ = run_cli(capsys, ["hk", "--ring", files["regular2"],
                                    "--ideal", "x,y", "--emax", "3"])
    assert code == 0
    report = json.loads(out)
    assert report["samples"] == [{"q": 2, "length": 4}, {"q": 4, "length": 16},
                                 {"q": 8, "length": 64}]
    assert report["ehk"] == "1/1"
    assert report["config"]["subcommand"] == "hk"


def test_fsig_report_schema(files, capsys):
    code, out, _ = run_cli(capsys, ["fsig", "--ring", files["e8"],
                                    "--emax", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["expected"] == "1/120"
    assert report["J"] == ["y", "z"]
    assert report["delta"] == "x"
    sample = report["samples"][0]
    assert set(sample) == {"q", "lenJ", "lenJD", "a1q", "s_q"}
    assert sample == {"q": 7, "lenJ": 98, "lenJD": 96, "a1q": 2,
                      "s_q": "2/49"}
    assert "/" in report["s"]


def test_veronese_report(files, capsys):
    code, out, _ = run_cli(capsys, ["veronese", "--p", "5", "--n", "3",
                                    "--smax", "6"])
    assert code == 0
    report = json.loads(out)
    assert report["matrix"] == [[8, 8, 9], [9, 8, 8], [8, 9, 8]]
    assert report["limits"][0] == "8/25"
    assert report["bounds"]["passed"] is True
    assert report["group_order"]["passed"] is True


def test_ade_verify_passes(files, capsys):
    code, out, _ = run_cli(capsys, ["ade-verify", "--ring", files["e8"],
                                    "--emax", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert report["lower_inequality"]["slack"] == "0/1"
    assert report["upper_bound"]["equality"] is True
    assert all(row["exact"] for row in report["structure"])


def test_ext_report_with_witness(files, capsys):
    code, out, _ = run_cli(capsys, ["ext", "--ring", files["node"],
                                    "--mf-m", files["mfx"],
                                    "--mf-n", files["mfy"],
                                    "--tmax", "12", "--h", "3"])
    assert code == 0
    report = json.loads(out)
    assert report["length"] == 1
    assert report["annihilator_exponent"] == 1
    assert report["witness"] == {"h": 3, "passed": True}


def test_ext_unstable_exits_one(files, capsys):
    code, out, _ = run_cli(capsys, ["ext", "--ring", files["node"],
                                    "--mf-m", files["mfx"],
                                    "--mf-n", files["mfy"], "--tmax", "1"])
    assert code == 1
    report = json.loads(out)
    assert report["length"] == "UNSTABLE"
    assert report["stable"] is False


def test_determinism_byte_identical(files, capsys):
    argv = ["fsig", "--ring", files["e8"], "--emax", "2", "--seed", "0"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert first == second
    argv = ["veronese", "--p", "7", "--n", "5", "--smax", "4"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert first == second


def test_input_errors_exit_two(files, capsys, tmp_path):
    code, out, err = run_cli(capsys, ["hk", "--ring", "/nonexistent.json",
                                      "--ideal", "x,y"])
    assert code == 2 and out == "" and "input error" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"char": 4, "vars": ["x"], "relations": []}),
                   encoding="utf-8")
    code, _, err = run_cli(capsys, ["hk", "--ring", str(bad),
                                    "--ideal", "x"])
    assert code == 2
    code, _, err = run_cli(capsys, ["hk", "--ring", files["regular2"],
                                    "--ideal", "x + (y)"])
    assert code == 2


def test_search_failure_exits_one(files, capsys):
    # single random trial with a seed that draws a pure-variable form
    code, out, err = run_cli(capsys, ["fsig", "--ring", files["node"],
                                      "--emax", "1", "--trials", "1",
                                      "--seed", "2"])
    assert code == 1 and out == ""
    assert "candidate" in err


def test_csv_and_text_projections(files, capsys):
    code, out, _ = run_cli(capsys, ["hk", "--ring", files["regular2"],
                                    "--ideal", "x,y", "--emax", "2",
                                    "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "length,q"
    code, out, _ = run_cli(capsys, ["veronese", "--p", "5", "--n", "3",
                                    "--format", "text"])
    assert code == 0
    assert "matrix[0][0] = 8" in out


def test_rejects_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobenate"])
    assert exc.value.code == 2
