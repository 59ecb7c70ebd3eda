import importlib
import json
import os


def _reloaded(monkeypatch, tmp_path):
    import report_logger as rl
    monkeypatch.setenv("HFOLD_LOG_DIR", str(tmp_path))
    monkeypatch.setenv("HFOLD_LOG_PATH", os.path.join(str(tmp_path), "runs.jsonl"))
    return importlib.reload(rl)


def test_log_run(monkeypatch, tmp_path):
    rl = _reloaded(monkeypatch, tmp_path)

    row = rl.log_run(command="verify", suite="blueprint", passed=24, failed=1, elapsed=1.23456,
                     extra={"ring": "z5", "kind": "d6", "system": "h3"})

    assert os.path.exists(rl.LOG_PATH)
    logged = json.loads(open(rl.LOG_PATH, encoding="utf-8").read().splitlines()[-1])

    assert logged == row
    assert logged["suite"] == "blueprint"
    assert logged["elapsed"] == 1.235
    assert logged["ts"].endswith("Z")
    assert logged["extra"]["ring"] == "z5"


def test_load_runs_df(monkeypatch, tmp_path):
    rl = _reloaded(monkeypatch, tmp_path)
    assert rl.load_runs_df().empty

    rl.log_run(command="verify", suite="rootsys", passed=3, failed=0, elapsed=0.1, extra={"ring": "poly"})
    with open(rl.LOG_PATH, "a", encoding="utf-8") as f:
        f.write("{not json\n")
    rl.log_run(command="tables", suite="fibers", passed=0, failed=0, elapsed=0.0)

    df = rl.load_runs_df()
    assert len(df) == 2
    assert df.iloc[0]["command"] == "tables"
    assert list(df["ring"]) == [None, "poly"]
