import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from quadtangles import cli
from quadtangles.quadratic import random_labels, random_structure_constants
from quadtangles.report import Record, Report, check, encode, info
from quadtangles.scalars import Cyclo, RootOfUnity


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "quadtangles.cli", *args], capture_output=True, text=True)


def test_report_summary_and_determinism():
    rep = Report("demo")
    rep.add(check("a", "oracle", {"n": 1}, 1, 1), check("b", "x", {}, 1, 2), info("c", "x", {}, 3))
    assert rep.summary() == {"checks": 2, "passed": 1, "failed": 1, "info": 1}
    assert not rep.ok
    assert rep.dumps() == rep.dumps()
    obj = json.loads(rep.dumps())
    assert {"id", "anchor", "params", "expected", "got", "residual", "pass"} <= set(obj["records"][1])
    assert "FAIL" in rep.to_table()


def test_encode_scalars():
    assert encode(Fraction(1, 3)) == "1/3"
    assert encode(1 + 2j) == [1.0, 2.0]
    assert encode(RootOfUnity(1, 4)) == "1/4"
    assert encode(Cyclo.const(4, Fraction(5, 2))) == "5/2"
    assert encode(float("inf")) == "inf"


def test_every_record_has_anchor():
    rep = cli.run(cli.RunConfig("partition"))
    assert all(r.anchor for r in rep.records)
    assert isinstance(rep.records[0], Record)


def test_jw_command():
    proc = run_cli("jw", "--n", "6", "--check", "all")
    assert proc.returncode == 0, proc.stderr
    ids = [r["id"] for r in json.loads(proc.stdout)["records"]]
    assert any("idempotent" in i for i in ids) and any("trace" in i for i in ids)
    assert any("hooks" in i for i in ids) and any(i.startswith("jw.rot") for i in ids)


def test_mult1_haagerup_command():
    proc = run_cli("mult1", "--n", "4", "--delta2", "4.302775637731995", "--omega", "1/2")
    assert proc.returncode == 0, proc.stderr
    rec = json.loads(proc.stdout)["records"][0]
    assert rec["got"]["r"] == pytest.approx(1.0, abs=1e-9)


def test_empty_sweep():
    proc = run_cli("mult1", "--n", "4:2", "--q", "1.3")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["checks"] == 0


def test_bad_input_exit_code(tmp_path):
    assert run_cli("annular", "--n", "3", "--omega", "bogus").returncode == 2
    bad = tmp_path / "g.json"
    bad.write_text('{"vertices": [{"id": "a", "class": 0}], "edges": []}')
    assert run_cli("graph", "pf", "--file", str(bad)).returncode == 2
    assert run_cli("mult1", "--n", "3", "--q", "1.3", "--omega", "0/1").returncode == 2


def test_graph_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"vertices": [{"id": "a", "class": 0, "star": True}, {"id": "b", "class": 1},
                                             {"id": "c", "class": 0}], "edges": [["a", "b", 1], ["b", "c", 1]]}))
    proc = run_cli("graph", "pf", "--file", str(path), "--table")
    assert proc.returncode == 0, proc.stderr
    assert "PASS" in proc.stdout


def test_master_with_labels_file(tmp_path):
    rng = np.random.default_rng(5)
    sc = random_structure_constants(random_labels(3, 2, rng), rng)
    path = tmp_path / "sc.json"
    path.write_text(json.dumps(sc.to_json()))
    proc = run_cli("master", "--labels", str(path), "--st", "0,1", "--pq", "1,0", "--j", "1", "--kind", "circ",
                   "--oracle", "--numeric")
    assert proc.returncode == 0, proc.stderr


def test_out_file_and_table(tmp_path):
    out = tmp_path / "r.json"
    assert run_cli("scalars", "--out", str(out)).returncode == 0
    assert json.loads(out.read_text())["suite"] == "scalars"
    assert "checks passed" in run_cli("tl", "--n", "4", "--table").stdout


def test_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig("nope")
    with pytest.raises(ValueError):
        cli.RunConfig("tl", tol=0)
    assert cli.parse_range("2:13:2", []) == [2, 4, 6, 8, 10, 12]
    assert cli.parse_range("3,5", []) == [3, 5]
    assert cli.parse_range("5:3", []) == []
