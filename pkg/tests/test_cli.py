import csv
import json
import subprocess
import sys

import pytest

from veridict.cli import main
from veridict.corpus import load_csv
from veridict.reporting import REPORT_COLUMNS, load_report_csv


def run(*argv):
    return main([str(a) for a in argv])


def eval_args(data, out, *extra):
    return ["eval", "--data", data, "--classifier", "pa", "--features", "tfidf", "--ngram", "1,3",
            "--max-features", "11000", "--protocol", "holdout", "--seed", "3", "--out", out, *extra]


def test_eval_writes_report(fixture_csv, tmp_path):
    assert run(*eval_args(fixture_csv, tmp_path, "--svg")) == 0
    rows = load_report_csv(tmp_path / "report.csv")
    assert len(rows) == 1
    row = rows[0]
    assert (row.classifier, row.feature_mode, row.ngram_lo, row.ngram_hi) == ("pa", "tfidf", 1, 3)
    assert row.max_features == 11000 and row.seed == 3 and row.wall_time_s is None
    assert 0.0 <= row.accuracy <= 1.0
    svg = (tmp_path / "report.svg").read_text()
    assert svg.startswith("<svg") and 'width="800" height="400"' in svg
    detail = json.loads((tmp_path / "report.json").read_text())
    assert sum(map(sum, detail["confusion"])) == 8


def test_eval_byte_identical(fixture_csv, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(*eval_args(fixture_csv, a)) == 0
    assert run(*eval_args(fixture_csv, b)) == 0
    assert (a / "report.csv").read_bytes() == (b / "report.csv").read_bytes()
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_timing_fills_column(fixture_csv, tmp_path):
    assert run(*eval_args(fixture_csv, tmp_path, "--timing")) == 0
    assert load_report_csv(tmp_path / "report.csv")[0].wall_time_s > 0


def test_config_precedence(fixture_csv, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"classifier": "nb", "feature": {"mode": "count", "max_features": 500}}))
    assert run("eval", "--data", fixture_csv, "--config", cfg, "--max-features", 700, "--out", tmp_path / "o") == 0
    row = load_report_csv(tmp_path / "o" / "report.csv")[0]
    assert (row.classifier, row.feature_mode, row.max_features) == ("nb", "count", 700)


def test_seed_env_default(fixture_csv, tmp_path, monkeypatch):
    monkeypatch.setenv("VERIDICT_SEED", "17")
    assert run("eval", "--data", fixture_csv, "--out", tmp_path) == 0
    assert load_report_csv(tmp_path / "report.csv")[0].seed == 17


def test_save_model_and_predict(fixture_csv, tmp_path, capsys):
    model = tmp_path / "m.vdm"
    assert run(*eval_args(fixture_csv, tmp_path, "--save-model", model)) == 0
    assert model.read_text().startswith("veridict-model ")
    capsys.readouterr()
    assert run("predict", "--model", model, "--data", fixture_csv) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "row,prediction" and len(lines) == 41


def test_sweep_single_range(fixture_csv, tmp_path, capsys):
    assert run("sweep", "--data", fixture_csv, "--ranges", "1,1", "--seed", "2", "--out", tmp_path) == 0
    with open(tmp_path / "sweep.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 60
    accs = [float(r["accuracy"]) for r in rows]
    assert accs == sorted(accs, reverse=True)
    out = capsys.readouterr().out.strip().splitlines()
    command = out[-1]
    assert command.startswith("veridict eval ") and "--seed 2" in command


def test_sweep_best_row_reproduces(fixture_csv, tmp_path, capsys):
    assert run("sweep", "--data", fixture_csv, "--ranges", "1,2", "--modes", "count",
               "--max-features", "50", "--classifiers", "lr", "nb", "--out", tmp_path / "s") == 0
    command = capsys.readouterr().out.strip().splitlines()[-1].split()
    argv = command[1:-1] + [str(tmp_path / "e")]
    assert run(*argv) == 0
    best = load_report_csv(tmp_path / "s" / "sweep.csv")[0]
    assert load_report_csv(tmp_path / "e" / "report.csv")[0].accuracy == best.accuracy


def test_augment(fixture_csv, tmp_path):
    out = tmp_path / "aug.csv"
    assert run("augment", "--data", fixture_csv, "--n", 10, "--seed", 1, "--out", out) == 0
    corpus = load_csv(out)
    assert len(corpus) == 440
    assert "parent_id" in out.read_text().splitlines()[0]
    again = tmp_path / "again.csv"
    assert run("augment", "--data", fixture_csv, "--n", 10, "--seed", 1, "--out", again) == 0
    assert out.read_bytes() == again.read_bytes()


def test_report_command(fixture_csv, tmp_path, capsys):
    assert run(*eval_args(fixture_csv, tmp_path / "e")) == 0
    capsys.readouterr()
    assert run("report", tmp_path / "e" / "report.csv", "--out", tmp_path / "r") == 0
    table = capsys.readouterr().out
    assert "Ott et al." in table and "Passive Aggressive Classifier" in table
    assert (tmp_path / "r" / "report.svg").exists()


def test_ingest(fixture_csv, capsys):
    assert run("ingest", "--data", fixture_csv) == 0
    assert "40 reviews" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--data", "X", "--classifier", "knn", "--out", "o"],
        ["eval", "--data", "X", "--ngram", "3,1", "--out", "o"],
        ["eval", "--data", "X", "--max-features", "0", "--out", "o"],
        ["eval", "--out", "o"],
        ["sweep", "--data", "X", "--ranges", "x", "--out", "o"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 2
    assert "usage:" in capsys.readouterr().err


def test_post_parse_usage_errors_exit_2(fixture_csv, tmp_path, capsys, monkeypatch):
    assert run("augment", "--data", fixture_csv, "--n", 0, "--out", tmp_path / "a.csv") == 2
    assert "usage:" in capsys.readouterr().err
    monkeypatch.setenv("VERIDICT_SEED", "abc")
    assert run("eval", "--data", fixture_csv, "--out", tmp_path) == 2


def test_runtime_errors_exit_1(tmp_path, fixture_csv):
    assert run("eval", "--data", tmp_path / "missing.csv", "--out", tmp_path) == 1
    bad = tmp_path / "bad.csv"
    bad.write_text("deceptive,hotel\ntruthful,x\n")
    assert run("eval", "--data", bad, "--out", tmp_path) == 1
    model = tmp_path / "m.vdm"
    model.write_text("garbage")
    assert run("predict", "--model", model, "--data", fixture_csv) == 1


def test_console_script_end_to_end(fixture_csv, tmp_path):
    cmd = [sys.executable, "-m", "veridict.cli", *eval_args(fixture_csv, tmp_path)]
    done = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert done.returncode == 0, done.stderr
    header = (tmp_path / "report.csv").read_text().splitlines()[0]
    assert header == ",".join(REPORT_COLUMNS)
    bad = subprocess.run([sys.executable, "-m", "veridict.cli", "eval"], capture_output=True, text=True)
    assert bad.returncode == 2
