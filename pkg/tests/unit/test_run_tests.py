# test_run_tests.py
from tests.run_tests import pytest_args


class TestRunnerArgs:
    """Test the pytest command built by the test runner."""

    def test_default_runs_everything(self):
        args = pytest_args([])
        assert args[1:4] == ["-m", "pytest", "tests/"]
        assert "not slow" not in args and "--cov=." not in args

    def test_fast_and_coverage(self):
        args = pytest_args(["--fast", "--coverage"])
        assert args[args.index("-m", 2) + 1] == "not slow"
        assert "--cov=." in args
