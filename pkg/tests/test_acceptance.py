"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the summary lines.
"""
import time

import pytest

from artifact import reproduce

CRITERIA = [
    (1, "exact combinatorics", "combinatorics", 60),
    (2, "Lie minima", "lie-min", 600),
    (3, "scalar constants", "bounds", 60),
    (4, "H estimates", "h", 60),
    (5, "GL2 geometry", "gl2", 600),
    (6, "example regressions", "examples", 600),
    (7, "time-ordered identities", "timeordered", 600),
]


@pytest.mark.parametrize("num,label,group,limit", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(num, label, group, limit):
    start = time.perf_counter()
    rows = reproduce.reproduce_all([group])
    elapsed = time.perf_counter() - start
    failed = [r for r in rows if not r.passed]
    ok = not failed and elapsed < limit
    print(f"\ncriterion {num} ({label}): {'PASS' if ok else 'FAIL'} "
          f"[{len(rows) - len(failed)}/{len(rows)} rows, {elapsed:.1f} s]")
    for r in failed:
        print(f"  failed: {r.name}: expected {r.expected}, got {r.computed}")
    assert rows
    assert ok
