"""Release gate: the eight acceptance criteria at exact tolerance.

The suite runs once per session (criterion 8 reruns 1-7 internally and
compares the canonical JSON byte for byte); each test prints its PASS/FAIL
line.  Run with ``pytest -s tests/test_acceptance.py`` to see the table.
"""

import json
import time

import pytest

from hktoolkit.suite import RESOLUTION_BUDGET, canonical, run_suite

BUDGET = 60.0


@pytest.fixture(scope="module")
def suite():
    t0 = time.perf_counter()
    report, times = run_suite(seed=0)
    return report, times, time.perf_counter() - t0


def _criterion(report, k):
    return next(r for r in report["criteria"] if r["id"] == k)


@pytest.mark.parametrize("k", range(1, 9))
def test_criterion(suite, k):
    report, _, _ = suite
    r = _criterion(report, k)
    print(f"\n[{'PASS' if r['passed'] else 'FAIL'}] criterion {k}: {r['name']}")
    assert r["passed"], json.dumps(r["details"], indent=1, default=str)[:4000]


def test_resolution_cases_within_budget(suite):
    report, times, _ = suite
    for case in _criterion(report, 6)["details"]["cases"]:
        assert case["within_budget"], case["case"]
    assert times[6] < 3 * RESOLUTION_BUDGET


def test_report_has_no_timings(suite):
    report, _, _ = suite
    text = canonical(report)
    assert "time" not in text and "elapsed" not in text


def test_total_runtime(suite):
    _, _, total = suite
    print(f"\nsuite wall time: {total:.1f} s (budget {BUDGET:.0f} s)")
    assert total < BUDGET
