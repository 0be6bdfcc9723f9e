import time
from contextlib import contextmanager

import pytest

from mpca.array import from_grid

from worked_examples import W_ROWS


@pytest.fixture
def W():
    return from_grid(W_ROWS)


@pytest.fixture
def criterion(request):
    """Times an acceptance criterion and records a PASS/FAIL line for the summary."""
    results = request.config.stash.setdefault(_RESULTS, [])

    @contextmanager
    def run(label, limit=None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert limit is None or elapsed < limit, f"{label}: {elapsed:.2f}s exceeds {limit}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            results.append(f"{'PASS' if ok else 'FAIL'}  {label}  ({elapsed:.2f}s)")

    return run


_RESULTS = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, [])
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
