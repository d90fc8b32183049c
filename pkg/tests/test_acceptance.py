"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines, or
``lp-extremal certify`` for the same checks as a JSON report.
"""

import time

import pytest

from lp_extremal.certify import CRITERIA, run_criterion

SEED = 0
TOTAL_LIMIT = 600.0  # whole certify run, seconds
_elapsed = {}


def _report(result):
    print()
    print(result.line())
    for c in result.checks:
        print(f"    {'ok ' if c.passed else 'BAD'} {c.name}: {c.detail}")


@pytest.mark.slow
@pytest.mark.parametrize("cid", sorted(CRITERIA), ids=lambda i: f"criterion_{i:02d}")
def test_criterion(cid):
    t0 = time.perf_counter()
    result = run_criterion(cid, SEED)
    _elapsed[cid] = time.perf_counter() - t0
    _report(result)
    failed = [f"{c.name} ({c.detail})" for c in result.checks if not c.passed]
    assert not failed, "; ".join(failed)


@pytest.mark.slow
def test_total_runtime():
    missing = sorted(set(CRITERIA) - set(_elapsed))
    for cid in missing:
        t0 = time.perf_counter()
        run_criterion(cid, SEED)
        _elapsed[cid] = time.perf_counter() - t0
    total = sum(_elapsed.values())
    print(f"\n[{'PASS' if total < TOTAL_LIMIT else 'FAIL'}] total runtime {total:.1f}s"
          f" < {TOTAL_LIMIT:g}s")
    assert total < TOTAL_LIMIT
