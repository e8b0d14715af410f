"""Regular-grid prices, log returns and sliding windows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DataError

if TYPE_CHECKING:
    from .ingest import TickSeries

HOUR = 3600
GAP_POLICIES = ("carry_forward", "fail")


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """Prices on a regular grid (``interval`` seconds) or on the grid a daily
    file provides (``interval == 0``, timestamps carried in ``labels``)."""

    grid_start: int
    interval: int
    prices: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        prices = np.asarray(self.prices, dtype=float)
        if prices.ndim != 1 or len(prices) < 1:
            raise ValueError("a price series needs at least one price")
        if np.any(~(prices > 0)):
            raise ValueError("prices must be positive")
        if self.interval < 0:
            raise ValueError("interval must be non-negative")
        object.__setattr__(self, "prices", prices)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64)
            if len(labels) != len(prices):
                raise ValueError("labels must match prices in length")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.prices)

    @property
    def timestamps(self) -> np.ndarray:
        if self.labels is not None:
            return self.labels
        return self.grid_start + self.interval * np.arange(len(self.prices), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """Log returns ``scale * (ln P[t+1] - ln P[t])``.

    ``labels[t]`` is the timestamp of the later price of each pair, if known.
    """

    values: np.ndarray
    scale: float = 100.0
    interval: int = 0
    labels: np.ndarray | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("returns must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise ValueError("returns must be finite")
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        object.__setattr__(self, "values", values)
        if self.labels is not None:
            object.__setattr__(self, "labels", np.asarray(self.labels, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SamplingSpec:
    interval_hours: int
    anchor: int | None = None  # None: first tick rounded up to a whole hour
    gap_policy: str = "carry_forward"

    def __post_init__(self):
        if not isinstance(self.interval_hours, (int, np.integer)) or not 1 <= self.interval_hours <= 168:
            raise ValueError(f"interval_hours must be an integer in [1, 168], got {self.interval_hours!r}")
        if self.gap_policy not in GAP_POLICIES:
            raise ValueError(f"gap_policy must be one of {GAP_POLICIES}, got {self.gap_policy!r}")

    @property
    def interval_seconds(self) -> int:
        return int(self.interval_hours) * HOUR


def default_anchor(first_timestamp: int) -> int:
    return -(-int(first_timestamp) // HOUR) * HOUR


def resample_last(ticks: TickSeries, spec: SamplingSpec) -> PriceSeries:
    """Sample the last traded price at or before each grid point.

    Grid points run from the anchor in steps of ``spec.interval_hours`` and
    stop at the last tick; nothing is extrapolated past it. Under the
    ``fail`` gap policy, an interval (previous grid point, grid point] with no
    trade raises DataError.
    """
    ts = ticks.timestamps
    if len(ts) == 0:
        raise DataError("cannot resample an empty tick series")
    anchor = default_anchor(ts[0]) if spec.anchor is None else int(spec.anchor)
    if anchor < ts[0]:
        raise DataError(f"anchor {anchor} precedes the first tick at {ts[0]}")
    if anchor > ts[-1]:
        raise DataError(f"anchor {anchor} is after the last tick at {ts[-1]}; no grid point holds a price")
    step = spec.interval_seconds
    n_points = (int(ts[-1]) - anchor) // step + 1
    grid = anchor + step * np.arange(n_points, dtype=np.int64)
    upto = np.searchsorted(ts, grid, side="right")
    if spec.gap_policy == "fail":
        empty = np.flatnonzero(np.diff(upto) == 0)
        if len(empty):
            g = int(grid[empty[0] + 1])
            raise DataError(f"no trades in the {spec.interval_hours}h interval ending at {g}")
    return PriceSeries(grid_start=anchor, interval=step, prices=ticks.prices[upto - 1])


def log_returns(prices: PriceSeries, scale: float = 100.0) -> ReturnSeries:
    if len(prices) < 2:
        raise DataError("log returns need at least two prices")
    if not scale > 0:
        raise ValueError("scale must be positive")
    values = scale * np.diff(np.log(prices.prices))
    return ReturnSeries(values, scale=scale, interval=prices.interval, labels=prices.timestamps[1:])


def window_offsets(n: int, length: int, step: int) -> np.ndarray:
    """Start indices of the sliding windows over ``n`` observations."""
    if length < 1 or step < 1:
        raise ValueError("window length and step must be positive")
    if length > n:
        raise DataError(f"window length {length} exceeds series length {n}")
    return np.arange(0, n - length + 1, step, dtype=np.int64)


def window(values, length: int, step: int = 1) -> np.ndarray:
    """Read-only sliding windows as rows of a 2-D view.

    Row ``k`` is ``values[k*step : k*step + length]``; there are
    ``(len(values) - length) // step + 1`` rows.
    """
    arr = np.asarray(values)
    window_offsets(len(arr), length, step)  # validates
    return sliding_window_view(arr, length)[::step]
