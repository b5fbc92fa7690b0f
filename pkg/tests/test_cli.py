import csv
import io
import json
import subprocess
import sys

import pytest

from evenpowers import bounds, cli
from evenpowers.core import PowerParams


def run(*argv):
    out = io.StringIO()
    status = cli.run(list(argv), stdout=out)
    return status, out.getvalue()


class TestRcount:
    def test_example(self):
        assert run("rcount", "-m", "1", "-k", "2", "-n", "25") == (0, "12\n")

    def test_table(self):
        status, text = run("rcount", "-m", "1", "-k", "2", "-N", "5", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert status == 0 and [r["count"] for r in rows] == ["1", "4", "4", "0", "4", "8"]
        assert rows[-1]["cumulative"] == "21"

    def test_json(self):
        status, text = run("rcount", "-m", "2", "-k", "2", "-n", "2", "--format", "json")
        assert json.loads(text) == {"m": 2, "k": 2, "n": 2, "count": 4}


class TestBounds:
    def test_json_fields(self):
        status, text = run("bounds", "-m", "2", "-k", "3", "-a", "1", "--format", "json")
        rec = json.loads(text)
        assert status == 0 and {"b_geo", "b_ana", "ratio"} <= rec.keys()
        # exact binary64 round trip
        assert rec["b_geo"] == bounds.b_geo(PowerParams(2, 3, 1.0))

    def test_csv_round_trip(self):
        status, text = run("bounds", "-m", "3", "-k", "4", "-a", "0.37", "--format", "csv")
        row = next(csv.DictReader(io.StringIO(text)))
        p = PowerParams(3, 4, 0.37)
        assert float(row["b_ana"]) == bounds.b_ana(p)
        assert float(row["ratio"]) == bounds.b_ana(p) / bounds.b_geo(p)


class TestErrors:
    @pytest.mark.parametrize("cmd", ["series", "verify"])
    def test_divergent(self, cmd, capsys):
        status, _ = run(cmd, "-m", "1", "-k", "2")
        assert status == 1 and "requires k < 2m" in capsys.readouterr().err

    @pytest.mark.parametrize("argv", [
        ["rcount", "--bogus"], ["rcount", "-m", "x"], ["nosuch"], [],
        ["bounds", "-m", "0", "-k", "1"], ["bounds", "-a", "-1"],
        ["sweep", "--a-min", "10", "--a-max", "1"], ["rcount", "-m", "1", "-k", "1"],
    ])
    def test_usage(self, argv, capsys):
        assert run(*argv)[0] == 1
        assert capsys.readouterr().err.startswith("error:")


class TestSweep:
    def test_k1_ratio_one(self):
        status, text = run("sweep", "-m", "2", "-k", "1", "--points", "11", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert len(rows) == 11 and all(r["ratio"] == "1" for r in rows)

    def test_m2k3_shape(self):
        status, text = run("sweep", "-m", "2", "-k", "3", "--a-min", "1e-3", "--a-max", "1e3",
                           "--points", "25", "--format", "json")
        rows = json.loads(text)
        assert len(rows) == 25
        top = [r["ratio"] for r in rows if r["a"] >= 100]
        assert all(b > a for a, b in zip(top, top[1:]))

    def test_series_columns(self):
        status, text = run("sweep", "-m", "2", "-k", "2", "--points", "3", "--with-series",
                           "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert all(float(r["b_ana"]) <= float(r["s_upper"]) for r in rows)
        assert all(float(r["s_lower"]) <= float(r["s_upper"]) for r in rows)

    def test_divergent_drops_columns(self, capsys):
        status, text = run("sweep", "-m", "1", "-k", "3", "--points", "4", "--with-series",
                           "--format", "csv")
        assert status == 0
        assert text.splitlines()[0] == "a,b_geo,b_ana,ratio"
        assert "omitted" in capsys.readouterr().err

    def test_lf_and_deterministic(self):
        args = ("sweep", "-m", "3", "-k", "4", "--points", "7", "--format", "csv")
        a, b = run(*args)[1], run(*args)[1]
        assert a == b and "\r" not in a and a.endswith("\n")


class TestConfig:
    def test_precedence(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# shared\nm = 2\nk = 3\na = 16\nformat = json\n")
        rec = json.loads(run("bounds", "--config", str(cfg))[1])
        assert (rec["m"], rec["k"], rec["a"]) == (2, 3, 16.0)
        rec = json.loads(run("bounds", "--config", str(cfg), "-a", "2")[1])
        assert rec["a"] == 2.0

    @pytest.mark.parametrize("body", ["m 2\n", "colour = red\n", "m = two\n"])
    def test_bad_config(self, tmp_path, body):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text(body)
        assert run("bounds", "--config", str(cfg))[0] == 1

    def test_missing_config(self):
        assert run("bounds", "--config", "/nonexistent/x.cfg")[0] == 1


class TestOtherCommands:
    def test_theta(self):
        rec = json.loads(run("theta", "-m", "1", "-q", "0.5", "--format", "json")[1])
        assert abs(rec["value"] - 2.12893682721) < 1e-10

    def test_ucot(self):
        rec = json.loads(run("ucot", "-m", "2", "-z", "1", "--tol", "1e-12", "--format", "json")[1])
        assert abs(rec["value"] - rec["closed_form"]) <= rec["error_bound"] + 1e-15

    def test_series(self):
        status, text = run("series", "-m", "1", "-k", "1", "-a", "1", "--format", "json")
        rec = json.loads(text)
        assert rec["lower"] <= 3.1533480949 <= rec["upper"]
        assert abs(rec["integral"] - 3.15334809493716) < 1e-9

    def test_verify(self):
        status, text = run("verify", "-m", "2", "-k", "2", "-a", "1", "--format", "json")
        rec = json.loads(text)
        assert status == 0 and rec["geo_strict"] and rec["ana_strict"]

    def test_verify_failure_exit(self, monkeypatch):
        # a bound that exceeds S must turn into exit status 2
        monkeypatch.setattr(bounds, "b_geo", lambda p: 1e9)
        assert run("verify", "-m", "2", "-k", "2", "-a", "1")[0] == 2

    def test_crossover_none(self):
        assert run("crossover", "-m", "2", "-k", "3", "--a-min", "1e-6", "--a-max", "1e6") == (0, "none\n")

    def test_out_file(self, tmp_path):
        path = tmp_path / "b.csv"
        status, text = run("bounds", "-m", "1", "-k", "1", "--format", "csv", "--out", str(path))
        assert status == 0 and text == ""
        assert path.read_bytes().startswith(b"m,k,a,b_geo")


class TestCheck:
    def test_no_color(self, monkeypatch):
        monkeypatch.setenv("NO_COLOR", "1")
        monkeypatch.setattr(cli.suite, "run_all", lambda n: [
            cli.suite.CheckResult("a", True, "ok"),
            cli.suite.CheckResult("b", False, "x", informational=True)])
        status, text = run("check")
        assert status == 0 and "\x1b" not in text
        assert text.splitlines() == ["[PASS] a: ok", "[INFO] b: x"]

    def test_failure_exit(self, monkeypatch):
        monkeypatch.setattr(cli.suite, "run_all", lambda n: [cli.suite.CheckResult("a", False, "bad")])
        assert run("check")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "evenpowers", "rcount", "-m", "1", "-k", "2", "-n", "25"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "12\n"
