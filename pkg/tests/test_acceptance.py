"""Acceptance gate: every criterion must pass exactly.

Each criterion prints its own pass/fail line so a full run reads as a
checklist; run with `pytest -s tests/test_acceptance.py` (or through the
CLI: `binquad verify`).
"""

import pytest

from binquad.acceptance import CRITERIA


@pytest.mark.parametrize("key,name,fn", CRITERIA, ids=[f"{k}-{n}" for k, n, _ in CRITERIA])
def test_criterion(key, name, fn):
    ok, detail = fn()
    print(f"{key} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{key} {name}: {detail}"
