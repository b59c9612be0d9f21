import csv
import io
import json
from pathlib import Path

import pytest

from in2test.cli import main
from in2test.datasets import data_dir

from .conftest import FIXTURES


def _add(store, run_id):
    d = data_dir(run_id)
    return main(["--store", str(store), "add-run", "--parts", str(d / "parts.csv"),
                 "--defects", str(d / "defects.csv"), "--run-json", str(d / "run.json")])


@pytest.fixture
def rules_file(tmp_path):
    path = tmp_path / "rules.json"
    assert main(["generate-rules", "-o", str(path)]) == 0
    return path


@pytest.fixture
def store(tmp_path):
    s = tmp_path / "store"
    assert _add(s, "qa-run-1") == 0
    assert _add(s, "qa-run-2") == 0
    return s


def _rows(path):
    return list(csv.DictReader(io.StringIO(Path(path).read_text())))


def test_generate_rules_default(rules_file):
    payload = json.loads(rules_file.read_text())
    assert len(payload["rules"]) == 118


def test_generate_rules_with_top_n(tmp_path, capsys):
    assert main(["generate-rules", "--top-n", "3,5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["rules"]) == 118 + 20


def test_generate_rules_families(capsys):
    assert main(["generate-rules", "--families", "class_length,mccabe"]) == 0
    assert len(json.loads(capsys.readouterr().out)["rules"]) == 4


def test_evaluate_run1(store, rules_file, tmp_path):
    out = tmp_path / "eval.csv"
    assert main(["--store", str(store), "evaluate", "--rules", str(rules_file), "--run", "qa-run-1", "-o", str(out)]) == 0
    rows = {r["rule_id"]: r for r in _rows(out)}
    assert len(rows) == 118
    row = rows["A.I/dc.all:large@p0.8"]
    assert row["category"] == "cat1" and row["selected"] == "I;III"


def test_prioritize(store, rules_file, capsys):
    assert main(["prioritize", "--store", str(store), "--rules", str(rules_file), "--run", "qa-run-2"]) == 0
    rows = {r["rule_id"]: r for r in csv.DictReader(io.StringIO(capsys.readouterr().out))}
    assert rows["A.I/dc.all:large@p0.8"]["selected"] == "VI;VII"
    assert rows["A.I/dc.all:large@p0.8"]["thresholds"] == "dc.all:large>32"


def _evaluate_both(store, rules_file):
    for rid in ("qa-run-1", "qa-run-2"):
        assert main(["--store", str(store), "evaluate", "--rules", str(rules_file), "--run", rid, "-o", "/dev/null"]) == 0


def test_trend(store, rules_file, tmp_path):
    _evaluate_both(store, rules_file)
    out = tmp_path / "trend.csv"
    assert main(["--store", str(store), "trend", "--rules", str(rules_file), "-o", str(out)]) == 0
    rows = _rows(out)
    assert rows[0]["classification"] == "acceptable"
    top = {r["rule_id"]: r for r in rows}["A.I/dc.all:large@p0.8"]
    assert (top["classification"], top["significance"], top["categories"]) == ("acceptable", "2", "cat1;cat2")


def test_reports(store, rules_file, tmp_path):
    _evaluate_both(store, rules_file)
    out = tmp_path / "rep"
    for fmt in ("md", "csv", "json"):
        assert main(["--store", str(store), "report", "--run", "qa-run-2", "--format", fmt, "-o", str(out)]) == 0
    md = (out / "report.md").read_text()
    assert "A.I/dc.all:large@p0.8 | cat2 | VI, VII" in md
    assert {p.name for p in out.iterdir()} >= {"report.md", "evaluation.csv", "trend.csv", "report.json"}
    data = json.loads((out / "report.json").read_text())
    assert data["run_id"] == "qa-run-2" and len(data["evaluations"]) == 118


def test_report_default_dir_and_topn_coverage(store, tmp_path):
    rules = tmp_path / "topn.json"
    assert main(["generate-rules", "--families", "top_n", "--top-n", "3,5,8", "-o", str(rules)]) == 0
    assert main(["--store", str(store), "evaluate", "--rules", str(rules), "--run", "qa-run-1", "-o", "/dev/null"]) == 0
    assert main(["--store", str(store), "report", "--run", "qa-run-1", "--format", "csv"]) == 0
    cov = _rows(store / "reports" / "qa-run-1" / "topn_coverage.csv")
    a1 = next(r for r in cov if r["assumption"] == "A1")
    assert a1["top_3"] == "1.0000"


def test_monitor_without_config(store, capsys):
    assert main(["--store", str(store), "monitor", "--run", "qa-run-1"]) == 0
    out = capsys.readouterr().out
    assert "no warnings" in out and "note:" in out


def test_monitor_with_config(tmp_path, capsys, run1):
    from dataclasses import replace
    from in2test.store import RunStore

    store = RunStore(tmp_path / "s")
    store.put_run(replace(run1, reading_rate=900.0))
    cfg = tmp_path / "m.toml"
    cfg.write_text("reading_rate_range = [100, 400]\n")
    assert main(["--store", str(store.root), "monitor", "--run", "qa-run-1", "--config", str(cfg)]) == 0
    assert "WARNING: reading rate 900 above reference 400" in capsys.readouterr().out


def test_env_store(tmp_path, monkeypatch):
    monkeypatch.setenv("IN2TEST_STORE", str(tmp_path / "env"))
    d = data_dir("qa-run-1")
    assert main(["add-run", "--parts", str(d / "parts.csv"), "--defects", str(d / "defects.csv"),
                 "--run-json", str(d / "run.json")]) == 0
    assert (tmp_path / "env" / "runs" / "qa-run-1" / "parts.csv").exists()


def test_store_flag_wins_over_env(tmp_path, monkeypatch):
    monkeypatch.setenv("IN2TEST_STORE", str(tmp_path / "env"))
    assert _add(tmp_path / "flag", "qa-run-1") == 0
    assert (tmp_path / "flag" / "runs").exists() and not (tmp_path / "env").exists()


def test_extract_metrics(tmp_path, capsys):
    manifest = tmp_path / "manifest.csv"
    manifest.write_text(f"path,part_id,name\n{FIXTURES / 'ClassIV.java'},IV,class IV\n")
    assert main(["extract-metrics", str(manifest)]) == 0
    row = next(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert (row["part_id"], row["loc"], row["mean_method_length"], row["mccabe"]) == ("IV", "243", "177", "44")


def test_unknown_flag_exit_1(capsys):
    assert main(["generate-rules", "--bogus"]) == 1


def test_missing_file_exit_2(tmp_path):
    assert main(["--store", str(tmp_path), "add-run", "--parts", "nope.csv", "--defects", "x", "--run-json", "y"]) == 2


def test_invalid_input_exit_1(tmp_path):
    bad = tmp_path / "parts.csv"
    bad.write_text("part_id,name,kind,loc,mean_method_length,mccabe\nA,a,class,-1,1,1\n")
    d = data_dir("qa-run-1")
    assert main(["--store", str(tmp_path / "s"), "add-run", "--parts", str(bad),
                 "--defects", str(d / "defects.csv"), "--run-json", str(d / "run.json")]) == 1


def test_missing_run_exit_2(tmp_path, rules_file):
    assert main(["--store", str(tmp_path), "evaluate", "--rules", str(rules_file), "--run", "nope"]) == 2
