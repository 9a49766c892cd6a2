"""Acceptance criteria 1-11 at their stated tolerances.

Each test prints one line; the same lines are collected into a summary
section at the end of the run.  RLK_WORKERS sets the worker count (default 8).
"""
import os

import pytest

from rlk import suite

from conftest import ACCEPTANCE_LINES

WORKERS = int(os.environ.get("RLK_WORKERS", "8"))
_results = {}


def _run(k):
    r = suite.CRITERIA[k](WORKERS)
    _results[k] = r
    line = suite.summary_line(r)
    ACCEPTANCE_LINES.append(line)
    print(line)
    return r


@pytest.mark.parametrize("k", list(suite.CRITERIA))
def test_criterion(k):
    r = _run(k)
    assert r["content_ok"], r["content"]
    assert r["runtime_s"] <= r["limit_s"], f"{r['runtime_s']:.1f} s over the {r['limit_s']} s limit"


def test_criterion_11_determinism():
    """Re-run every criterion with one worker; report content must hash equal."""
    first = [_results.get(k) or suite.CRITERIA[k](WORKERS) for k in suite.CRITERIA]
    r = suite.criterion11(first, (WORKERS, 1))
    line = suite.summary_line(r)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert r["passed"], r["content"]
