"""Acceptance criteria at their stated tolerances, one pass/fail line each."""

import subprocess
import sys
import time

import pytest

from jordansym.acceptance import CRITERIA, AcceptanceConfig, Tolerances, run_criterion

from conftest import ACCEPTANCE_LINES


def record(line):
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = run_criterion(number, AcceptanceConfig())
    record(result.line())
    assert result.passed, result.details


def test_criterion_11_selftest_end_to_end():
    budget = Tolerances().selftest_seconds
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "jordansym", "selftest"],
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < budget
    record(f"[{'PASS' if ok else 'FAIL'}] criterion 11 self-test end to end ({elapsed:.2f}s)")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert elapsed < budget
    assert proc.stdout.count("[PASS]") == 11
