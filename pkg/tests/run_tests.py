#!/usr/bin/env python3
"""
Test runner script for hfold
Usage: python tests/run_tests.py [--fast] [--coverage]
"""

import os
import subprocess
import sys


def pytest_args(argv):
    """--fast skips the slow E8 and blueprint tests; --coverage adds a coverage report."""
    args = [sys.executable, "-m", "pytest", "tests/", "-v", "--tb=short"]
    if "--fast" in argv:
        args += ["-m", "not slow"]
    if "--coverage" in argv:
        args += ["--cov=.", "--cov-report=term-missing"]
    return args


if __name__ == "__main__":
    os.chdir(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    sys.exit(subprocess.run(pytest_args(sys.argv[1:])).returncode)
