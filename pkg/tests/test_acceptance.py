"""Acceptance battery: one PASS/FAIL line per criterion, at the stated tolerances."""
import io
import os
import tempfile

import pytest

from conftest import ACCEPTANCE_LINES
from diractime import cli
from diractime.battery import CRITERIA, CheckResult

SEED = 0


def report(key: str, results: list[CheckResult]) -> bool:
    ok = all(r.passed for r in results)
    failed = [r.name for r in results if not r.passed]
    summary = f"{'PASS' if ok else 'FAIL'} criterion {key:>2}"
    if failed:
        summary += f" (failed: {', '.join(failed)})"
    lines = [summary] + [f"    {r.line()}" for r in results]
    ACCEPTANCE_LINES.extend(lines)
    print("\n".join(lines))
    return ok


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key):
    results = CRITERIA[key](SEED)
    assert results, f"criterion {key} produced no checks"
    assert report(key, results)


def test_criterion_15_check_is_byte_reproducible():
    blobs = []
    with tempfile.TemporaryDirectory() as tmp:
        for k in range(2):
            path = os.path.join(tmp, f"run{k}.csv")
            code = cli.run_command(["check", "--only", "1,2", "--seed", str(SEED), "--out", path],
                                   io.StringIO(), io.StringIO())
            with open(path, "rb") as fh:
                blobs.append(fh.read())
    same = blobs[0] == blobs[1] and len(blobs[0]) > 0
    result = CheckResult("15", "check CSV identical across runs", same and code == 0,
                         0.0 if same else 1.0, 0.0, f"exit={code} bytes={len(blobs[0])}")
    assert report("15", [result])
