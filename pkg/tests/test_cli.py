import csv
import json
import subprocess
import sys


from artifact.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mu_json(capsys):
    code, out, _ = run(capsys, "mu", "--k", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"X1X2": "1/2", "X2X1": "-1/2"}


def test_format_flag_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "json", "mu", "--k", "2")
    assert code == 0 and json.loads(out)["X1X2"] == "1/2"


def test_json_deterministic(capsys):
    a = run(capsys, "bch", "--n", "4", "--format", "json")[1]
    b = run(capsys, "bch", "--n", "4", "--format", "json")[1]
    assert a == b


def test_bounds_delta(capsys):
    code, out, _ = run(capsys, "bounds", "--constant", "delta", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert abs(data["value"] - 2.1737374) < 1e-6 and data["est_error"] < 1e-6


def test_goldberg(capsys):
    code, out, _ = run(capsys, "goldberg", "--word", "XXY", "--format", "json")
    assert code == 0 and "1/12" in out


def test_gl2_domain_error_and_lift(capsys):
    code, _, err = run(capsys, "gl2", "mp", "--matrix", "-5.6033,0,0,-3.6033")
    assert code == 2 and "domain error" in err
    code, out, _ = run(capsys, "gl2", "mp", "--matrix", "-5.6033,0,0,-3.6033", "--lift", "--format", "json")
    assert code == 0


def test_gl2_classify(capsys):
    code, out, _ = run(capsys, "gl2", "classify", "--matrix", "1,0,0,1", "--format", "json")
    assert code == 0 and "identity" in out


def test_usage_errors(capsys):
    assert run(capsys, "mu", "--bogus")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys)[0] == 1


def test_resource_cap(capsys):
    assert run(capsys, "mu", "--k", "40")[0] == 3


def test_texp_and_series(tmp_path, capsys):
    m = tmp_path / "phi.txt"
    m.write_text("0,1,0,0;0.25\n0,0,1,0;0.25\n")
    code, out, _ = run(capsys, "texp", "--measure", str(m), "--format", "json")
    assert code == 0
    code, out, _ = run(capsys, "magnus-series", "--measure", str(m), "--k-max", "4", "--format", "json")
    assert code == 0
    e = tmp_path / "ex.txt"
    e.write_text("X1;1\nX2;1\n")
    code, out, _ = run(capsys, "resolvent", "--k", "4", "--lambda", "1/2", "--measure", str(e),
                       "--exact", "--check", "--format", "json")
    assert code == 0


def test_reproduce_csv_and_manifest(tmp_path, capsys):
    out_csv = tmp_path / "out.csv"
    man = tmp_path / "run.json"
    code, out, _ = run(capsys, "reproduce", "--only", "combinatorics", "--emit-csv", str(out_csv),
                       "--manifest", str(man), "--format", "json")
    assert code == 0
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["constant", "paper", "computed", "tol", "pass"]
    assert all(r[4] == "True" for r in rows[1:])
    data = json.loads(man.read_text())
    assert data["subcommand"] == "reproduce" and "wall_time" in data


def test_reproduce_unknown_group(capsys):
    assert run(capsys, "reproduce", "--only", "nope")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "artifact", "mu", "--k", "2", "--format", "json"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["X2X1"] == "-1/2"
