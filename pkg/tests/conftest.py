"""Shared fixtures and the acceptance-criteria reporter.

Each acceptance test records a single pass/fail line; the lines are
printed together in the terminal summary so the criteria can be read off
one per row regardless of pytest's own output capturing.
"""

import pytest

from trilinear import TriLinearMap, parse_poly

_CRITERIA = {}


def record_criterion(num: int, passed: bool, detail: str = "") -> None:
    _CRITERIA[num] = (passed, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        passed, detail = _CRITERIA[num]
        line = f"criterion {num:2d}: {'PASS' if passed else 'FAIL'}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


def make_map(*entries) -> TriLinearMap:
    return TriLinearMap(tuple(parse_poly(e) for e in entries))


# a type-(2,2,2)-shaped map that is nevertheless not birational: its
# syzygy table has the right pattern but the splitting condition fails
NEGATIVE_222 = (
    "x0*y0*z1",
    "x1*y1*z0 + x1*y0*z1 + x0*y1*z1 + x1*y1*z1",
    "x0*y1*z0",
    "x1*y0*z0",
)


@pytest.fixture
def negative_222():
    return make_map(*NEGATIVE_222)
