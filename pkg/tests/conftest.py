import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qga.algebra import build_quotient  # noqa: E402
from qga.presentation import builtin  # noqa: E402

ACCEPTANCE_RESULTS = {}

FIXTURES = [
    ("q1e", 2), ("q1e", 3), ("q1e", 4),
    ("two_loop", 1), ("two_loop", 2), ("two_loop", 3),
    ("truncated_poly", 2), ("truncated_poly", 3), ("truncated_poly", 6),
    ("linear_an", 2), ("linear_an", 4),
]

_cache = {}


def quotient(name, param, field="Q"):
    key = (name, param, field)
    if key not in _cache:
        _cache[key] = build_quotient(builtin(name, [param]).with_field(field))
    return _cache[key]


@pytest.fixture(params=FIXTURES, ids=[f"{n}:{r}" for n, r in FIXTURES])
def fixture_algebra(request):
    return quotient(*request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, title = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
