"""Moment summaries, the Jarque-Bera normality test and Spearman's rho."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import DataError, DegenerateSeriesError
from .series import ReturnSeries, window, window_offsets


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    median: float
    min: float
    max: float
    std_dev: float
    skewness: float
    kurtosis: float
    jarque_bera: float
    jb_p_value: float


STATS_COLUMNS = [
    "n", "mean", "median", "min", "max", "std_dev",
    "skewness", "kurtosis", "jarque_bera", "jb_p_value",
]


def jarque_bera(n: int, skewness: float, kurtosis: float) -> float:
    """JB statistic from sample size, skewness and raw (non-excess) kurtosis."""
    return n / 6.0 * (skewness**2 + (kurtosis - 3.0) ** 2 / 4.0)


def chi2_2dof_sf(x: float) -> float:
    # Q(1, x/2), the regularized upper incomplete gamma at shape 1, is exp(-x/2).
    return math.exp(-0.5 * x) if x > 0 else 1.0


def describe(returns: ReturnSeries | np.ndarray) -> DescriptiveStats:
    """Summary statistics of a return series.

    Skewness and kurtosis use 1/n central moments, kurtosis is raw (3 for a
    Gaussian), std_dev uses the n-1 denominator.
    """
    x = np.asarray(getattr(returns, "values", returns), dtype=float)
    n = len(x)
    if n < 4:
        raise DataError(f"describe needs at least 4 observations, got {n}")
    mean = float(np.mean(x))
    d = x - mean
    m2 = float(np.mean(d**2))
    if m2 == 0.0:
        raise DegenerateSeriesError("zero variance: skewness and kurtosis are undefined")
    m3 = float(np.mean(d**3))
    m4 = float(np.mean(d**4))
    skew = m3 / m2**1.5
    kurt = m4 / m2**2
    jb = jarque_bera(n, skew, kurt)
    return DescriptiveStats(
        n=n,
        mean=mean,
        median=float(np.median(x)),
        min=float(np.min(x)),
        max=float(np.max(x)),
        std_dev=math.sqrt(m2 * n / (n - 1)),
        skewness=skew,
        kurtosis=kurt,
        jarque_bera=jb,
        jb_p_value=chi2_2dof_sf(jb),
    )


def spearman_rho(x, y) -> float:
    """Pearson correlation of average ranks (ties share the mean rank)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DataError(f"spearman_rho needs two equal-length sequences, got {x.shape} and {y.shape}")
    if len(x) < 3:
        raise DataError("spearman_rho needs at least 3 pairs")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DataError("spearman_rho needs finite values")
    rx = rankdata(x)
    ry = rankdata(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateSeriesError("constant sequence: rank variance is zero")
    rho = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, rho))


def rolling_spearman(x, y, window_len: int, step: int = 1) -> list[tuple[int, float | None]]:
    """Spearman's rho per sliding window; degenerate windows give None."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) != len(y):
        raise DataError(f"length mismatch: {len(x)} vs {len(y)}")
    offsets = window_offsets(len(x), window_len, step)
    out: list[tuple[int, float | None]] = []
    for off, wx, wy in zip(offsets.tolist(), window(x, window_len, step), window(y, window_len, step)):
        try:
            out.append((off, spearman_rho(wx, wy)))
        except DataError:
            out.append((off, None))
    return out
