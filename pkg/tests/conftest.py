import time
from contextlib import contextmanager

import pytest

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Time a block against its runtime limit and record one verdict line."""

    @contextmanager
    def run(number: int, limit: float):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _CRITERIA[number] = ("FAIL", time.perf_counter() - start, limit)
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        _CRITERIA[number] = ("PASS" if ok else "FAIL", elapsed, limit)
        assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        verdict, elapsed, limit = _CRITERIA[number]
        terminalreporter.write_line(
            f"{verdict} criterion {number} ({elapsed:.2f}s, limit {limit:g}s)"
        )
