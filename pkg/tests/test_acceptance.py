"""Acceptance gate: every criterion runs at its pinned tolerance and prints
one pass/fail line.  `idealpoly selftest` runs the same functions."""

import pytest

from idealpoly import acceptance


def _run(fn):
    result = fn()
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {result.cid} {result.name}: {result.detail}")
    assert result.passed, f"{result.cid} {result.name}: {result.detail}"


@pytest.mark.parametrize("fn", acceptance.ALL_CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn):
    _run(fn)
