# test_cli.py
"""
End-to-end runs of the hfold command line: argument parsing, suite dispatch,
report files, exit codes and the run log.
"""

import importlib
import json
import os
from concurrent.futures import ThreadPoolExecutor

import pytest

import hfold
import report_logger
from api.models import check


@pytest.fixture(autouse=True)
def isolated_log(monkeypatch, tmp_path):
    monkeypatch.setenv("HFOLD_LOG_DIR", str(tmp_path))
    monkeypatch.setenv("HFOLD_LOG_PATH", os.path.join(str(tmp_path), "runs.jsonl"))
    importlib.reload(report_logger)
    yield


def _boom(config):
    raise ArithmeticError("division by a non-unit")


@pytest.fixture
def fake_suites(monkeypatch):
    suites = {
        "good": lambda config: [check("good-b", "second", True), check("good-a", "first", True)],
        "bad": lambda config: [check("bad-a", "broken", False, "witness text")],
        "boom": _boom,
    }
    monkeypatch.setattr(hfold, "SUITES", suites)
    return suites


class TestVerify:
    """Test the verify command against stand-in suites."""

    def test_passing_suite_writes_report(self, fake_suites, tmp_path):
        out = tmp_path / "reports" / "good.json"
        assert hfold.main(["verify", "good", "--out", str(out), "--no-timing"]) == hfold.EXIT_OK
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["suite"] == "good"
        assert [c["id"] for c in report["checks"]] == ["good-a", "good-b"]
        assert report["elapsed"] == 0.0

    def test_failing_suite(self, fake_suites, capsys):
        assert hfold.main(["verify", "bad", "--out", "-"]) == hfold.EXIT_FAILED
        captured = capsys.readouterr()
        assert json.loads(captured.out)["checks"][0]["status"] == "fail"
        assert "FAIL bad-a: witness text" in captured.err

    def test_suite_error_becomes_a_failed_check(self, fake_suites, capsys):
        assert hfold.main(["verify", "boom", "--out", "-"]) == hfold.EXIT_FAILED
        report = json.loads(capsys.readouterr().out)
        assert report["checks"][0]["id"] == "boom-error"
        assert "non-unit" in report["checks"][0]["witness"]

    def test_all_in_parallel(self, fake_suites, capsys, mocker):
        pool = mocker.patch.object(hfold, "ProcessPoolExecutor", side_effect=ThreadPoolExecutor)
        assert hfold.main(["verify", "all", "--jobs", "3", "--out", "-", "--no-timing"]) == hfold.EXIT_FAILED
        pool.assert_called_once_with(max_workers=3)
        report = json.loads(capsys.readouterr().out)
        ids = [c["id"] for c in report["checks"]]
        assert ids == sorted(ids)
        assert {"good-a", "bad-a", "boom-error"} <= set(ids)

    def test_single_job_stays_in_process(self, fake_suites, capsys, mocker):
        pool = mocker.patch.object(hfold, "ProcessPoolExecutor")
        hfold.main(["verify", "all", "--out", "-"])
        pool.assert_not_called()

    def test_run_is_logged(self, fake_suites, mocker):
        spy = mocker.spy(report_logger, "log_run")
        hfold.main(["verify", "good", "--out", "-", "--ring", "z5"])
        spy.assert_called_once()
        assert spy.call_args.kwargs["extra"]["ring"] == "z5"
        assert spy.call_args.kwargs["passed"] == 2

    def test_history(self, fake_suites, capsys):
        assert hfold.main(["history"]) == hfold.EXIT_OK
        assert "No runs logged yet." in capsys.readouterr().out
        hfold.main(["verify", "bad", "--out", "-"])
        capsys.readouterr()
        assert hfold.main(["history"]) == hfold.EXIT_OK
        out = capsys.readouterr().out
        assert "verify" in out and "bad" in out


class TestUsageErrors:
    """Test exit codes for bad selectors and unwritable output."""

    def test_unknown_suite(self, fake_suites, capsys):
        assert hfold.main(["verify", "nosuch", "--out", "-"]) == hfold.EXIT_USAGE
        assert "Unknown suite" in capsys.readouterr().err

    def test_bad_ring(self, fake_suites, capsys):
        assert hfold.main(["verify", "good", "--ring", "q7"]) == hfold.EXIT_USAGE
        assert "Invalid selector" in capsys.readouterr().err

    def test_bad_jobs(self, fake_suites):
        assert hfold.main(["verify", "good", "--jobs", "0"]) == hfold.EXIT_USAGE

    def test_unfold_rejects_a4(self, capsys):
        assert hfold.main(["verify", "unfold", "--kind", "a4", "--out", "-"]) == hfold.EXIT_USAGE
        assert "A4 has no unfolding" in capsys.readouterr().err

    def test_unwritable_output(self, fake_suites, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x", encoding="utf-8")
        out = blocker / "report.json"
        assert hfold.main(["verify", "good", "--out", str(out)]) == hfold.EXIT_IO

    def test_missing_command(self):
        with pytest.raises(SystemExit) as exc:
            hfold.main([])
        assert exc.value.code == 2


class TestTables:
    """Test the tables command on the real figures."""

    def test_fibers_markdown(self, capsys):
        assert hfold.main(["tables", "fibers", "--system", "h3", "--format", "md"]) == hfold.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "| beta | alpha1 | alpha2 |"
        assert len(lines) == 17

    def test_cycle_csv_file(self, tmp_path):
        out = tmp_path / "cycle.csv"
        assert hfold.main(["tables", "cycle", "--out", str(out)]) == hfold.EXIT_OK
        assert len(out.read_text(encoding="utf-8").splitlines()) == 64

    def test_bad_format(self, capsys):
        assert hfold.main(["tables", "fibers", "--format", "xml"]) == hfold.EXIT_USAGE


class TestRealSuites:
    """Test a few real suites through the command line."""

    def test_identities(self, capsys):
        assert hfold.main(["blueprint", "identities", "--out", "-"]) == hfold.EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert len(report["checks"]) == 35

    def test_ringstructure(self, capsys):
        assert hfold.main(["verify", "ringstructure", "--out", "-", "--no-timing"]) == hfold.EXIT_OK
        assert json.loads(capsys.readouterr().out)["elapsed"] == 0.0

    @pytest.mark.slow
    def test_blueprint_run(self, capsys):
        assert hfold.main(["blueprint", "run", "--out", "-"]) == hfold.EXIT_OK
        rows = json.loads(capsys.readouterr().out)
        assert [r["label"] for r in rows] == [f"raw-{k}" for k in range(1, 16)]
