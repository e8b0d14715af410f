"""Sliding-window Hurst trajectories and their alignment with covariates."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dfa import DfaConfig, HurstEstimate, default_scales, hurst_dfa
from .errors import DataError, DegenerateSeriesError
from .series import ReturnSeries, window_offsets

ALIGNMENTS = ("window_end", "window_start")
HURST_COLUMNS = ["offset", "timestamp", "h", "intercept", "r_squared"]


@dataclass(frozen=True, eq=False)
class HurstSeries:
    """One DFA estimate per window; ``None`` marks a degenerate window."""

    offsets: np.ndarray
    estimates: list[HurstEstimate | None]
    window: int
    step: int
    n_obs: int | None = None
    labels: np.ndarray | None = None  # timestamps of the underlying observations

    def __len__(self) -> int:
        return len(self.estimates)

    @property
    def h(self) -> np.ndarray:
        return np.array([np.nan if e is None else e.h for e in self.estimates])

    def anchor_index(self, alignment: str = "window_end") -> np.ndarray:
        if alignment not in ALIGNMENTS:
            raise ValueError(f"alignment must be one of {ALIGNMENTS}, got {alignment!r}")
        return self.offsets + (self.window - 1 if alignment == "window_end" else 0)

    def rows(self, alignment: str = "window_end") -> list[dict]:
        """Table rows with columns ``offset,timestamp,h,intercept,r_squared``."""
        idx = self.anchor_index(alignment)
        out = []
        for off, i, est in zip(self.offsets.tolist(), idx.tolist(), self.estimates):
            ts = None if self.labels is None else int(self.labels[i])
            out.append({
                "offset": off,
                "timestamp": ts,
                "h": None if est is None else est.h,
                "intercept": None if est is None else est.intercept,
                "r_squared": None if est is None else est.r_squared,
            })
        return out


def rolling_hurst(
    returns: ReturnSeries | np.ndarray,
    window: int = 500,
    step: int = 1,
    config: DfaConfig | None = None,
    workers: int = 1,
) -> HurstSeries:
    """DFA Hurst exponent over sliding windows of ``window`` points.

    Windows are independent; with ``workers > 1`` they are evaluated on a
    thread pool and assembled in offset order, so the result is identical to
    the serial one.
    """
    values = np.asarray(getattr(returns, "values", returns), dtype=float)
    labels = getattr(returns, "labels", None)
    if config is None:
        config = DfaConfig(scales=tuple(default_scales(window)))
    if window < 2 * config.scales[-1]:
        raise DataError(f"window {window} is shorter than twice the largest scale {config.scales[-1]}")
    offsets = window_offsets(len(values), window, step)

    def one(off: int) -> HurstEstimate | None:
        try:
            return hurst_dfa(values[off : off + window], config)
        except DegenerateSeriesError:
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            estimates = list(pool.map(one, offsets.tolist()))
    else:
        estimates = [one(off) for off in offsets.tolist()]
    return HurstSeries(offsets, estimates, window, step, n_obs=len(values), labels=labels)


def align_hurst_with(
    series: HurstSeries, covariate, alignment: str = "window_end"
) -> tuple[np.ndarray, np.ndarray]:
    """Pair each H with the covariate at its window-end (or -start) index.

    The covariate must live on the same observation grid as the returns the
    trajectory was computed from. Missing H values come back as NaN.
    """
    cov = np.asarray(covariate, dtype=float)
    idx = series.anchor_index(alignment)
    if series.n_obs is not None and len(cov) != series.n_obs:
        raise DataError(
            f"covariate has {len(cov)} observations but the Hurst series was computed on {series.n_obs}"
        )
    if len(idx) and len(cov) <= idx[-1]:
        raise DataError(
            f"covariate has {len(cov)} observations but index {int(idx[-1])} is needed "
            f"for {len(idx)} Hurst values"
        )
    return series.h, cov[idx]
