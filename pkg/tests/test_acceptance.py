"""One test per acceptance criterion. Each prints a PASS/FAIL line, and the
lines are repeated together at the end of the pytest run.

Run directly with ``python3 tests/test_acceptance.py`` for just the lines."""

import json

import pytest

from raygraph.acceptance import CRITERIA

RESULTS = {}


@pytest.mark.parametrize("name,check", CRITERIA, ids=[n.split()[0] for n, _ in CRITERIA])
def test_criterion(name, check):
    ok, detail = check()
    line = f"{'PASS' if ok else 'FAIL'} criterion {name}"
    RESULTS[name] = line
    print(line)
    assert ok, json.dumps(detail, default=str)[:2000]


if __name__ == "__main__":
    import sys
    from raygraph.acceptance import run_all
    rows = run_all(log=print)
    sys.exit(0 if all(r["ok"] for r in rows) else 1)
