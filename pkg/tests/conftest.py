from __future__ import annotations

import time

import pytest

_RESULTS = pytest.StashKey[dict]()


class Recorder:
    """Times one acceptance criterion and stores its outcome on the config."""

    def __init__(self, store: dict, number: int, title: str, limit: float | None):
        self.store = store
        self.number = number
        self.title = title
        self.limit = limit
        self.start = time.perf_counter()
        store[number] = (title, False, 0.0, "did not finish")

    def finish(self):
        elapsed = time.perf_counter() - self.start
        ok = self.limit is None or elapsed < self.limit
        note = "" if ok else f"over the {self.limit:g}s limit"
        self.store[self.number] = (self.title, ok, elapsed, note)
        assert ok, f"criterion {self.number} took {elapsed:.1f}s ({note})"


@pytest.fixture
def criterion(request):
    store = request.config.stash.setdefault(_RESULTS, {})

    def start(number: int, title: str, limit: float | None = None) -> Recorder:
        return Recorder(store, number, title, limit)

    return start


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_RESULTS, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        title, ok, elapsed, note = store[number]
        status = "PASS" if ok else "FAIL"
        extra = f" ({note})" if note else ""
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}  [{elapsed:.2f}s]{extra}")
