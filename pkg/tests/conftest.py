import time

import pytest

from iaslsign import signing
from iaslsign.graphs import Graph


@pytest.fixture(autouse=True)
def cross_check(monkeypatch):
    """Run the brute-force oracles behind every balance/clustering call."""
    monkeypatch.setattr(signing, "CROSS_CHECK", True)


def path(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


# Acceptance reporting: tests marked ``criterion(n)`` get one summary line each.

_SESSION_START = time.monotonic()
_CRITERIA: dict[int, tuple[str, float, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def session_elapsed() -> float:
    return time.monotonic() - _SESSION_START


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    n = mark.args[0]
    detail = dict(item.user_properties).get("detail", "")
    prev = _CRITERIA.get(n)
    status = "PASS" if rep.passed else "FAIL"
    if prev:
        status = "FAIL" if "FAIL" in (prev[0], status) else "PASS"
        detail = "; ".join(d for d in (prev[2], detail) if d)
    _CRITERIA[n] = (status, rep.duration + (prev[1] if prev else 0.0), detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, secs, detail = _CRITERIA[n]
        tr.write_line(f"criterion {n:2d}: {status} ({secs:.1f}s) {detail}".rstrip())
    total = session_elapsed()
    tr.write_line(f"suite runtime: {total:.1f}s ({'PASS' if total < 300 else 'FAIL'} against the 300s budget)")
