import numpy as np
import pytest

from longmem.ingest import TickSeries

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def report():
    """Record one acceptance line; shown in the terminal summary."""

    def _report(tag: str, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.append((tag, bool(ok), detail))
        print(f"{tag}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{tag}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def synthetic_ticks() -> TickSeries:
    """About 40 days of irregular trades on a geometric random walk."""
    rng = np.random.default_rng(20130331)
    gaps = rng.exponential(900.0, size=4000).astype(np.int64)
    ts = 1364774400 + 17 + np.cumsum(gaps)
    prices = 93.25 * np.exp(np.cumsum(rng.standard_t(3, size=len(ts)) * 0.004))
    volumes = np.round(rng.exponential(1.5, size=len(ts)), 8)
    return TickSeries(ts, prices, volumes)
