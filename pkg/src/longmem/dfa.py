"""Detrended fluctuation analysis.

The series is integrated into a mean-removed profile, the profile is cut into
``len // m`` non-overlapping blocks of size ``m`` starting from the first
point (a trailing remainder is dropped), each block is detrended by a
least-squares polynomial in the within-block index 1..m, and F(m) is the RMS
of all retained residuals. The Hurst exponent is the OLS slope of ln F(m)
against ln m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DataError, DegenerateSeriesError

DEFAULT_SCALES = (4, 8, 16, 32, 64, 128)
BLOCK_POLICIES = ("truncate_tail",)


@dataclass(frozen=True)
class DfaConfig:
    scales: tuple[int, ...] = DEFAULT_SCALES
    poly_order: int = 1
    block_policy: str = "truncate_tail"

    def __post_init__(self):
        scales = tuple(int(m) for m in self.scales)
        object.__setattr__(self, "scales", scales)
        if self.poly_order < 1:
            raise ValueError("poly_order must be >= 1")
        if len(scales) < 3:
            raise ValueError("at least 3 scales are needed for the regression")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise ValueError(f"scales must be strictly increasing, got {scales}")
        if scales[0] < self.poly_order + 2:
            raise ValueError(f"smallest scale must be >= poly_order + 2 = {self.poly_order + 2}")
        if self.block_policy not in BLOCK_POLICIES:
            raise ValueError(f"unsupported block_policy {self.block_policy!r}")


@dataclass(frozen=True)
class HurstEstimate:
    h: float
    intercept: float
    r_squared: float
    n_points: int
    fluctuations: tuple[tuple[int, float], ...] = field(default=(), compare=True)


def default_scales(window_len: int) -> list[int]:
    """Powers of two from 4 up to ``min(128, window_len // 2)``."""
    cap = min(128, window_len // 2)
    scales = []
    m = 4
    while m <= cap:
        scales.append(m)
        m *= 2
    if len(scales) < 3:
        raise DataError(f"window of {window_len} points admits fewer than 3 scales")
    return scales


def profile(y) -> np.ndarray:
    """Cumulative sum of the mean-removed series."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or len(y) < 2:
        raise DataError("profile needs a 1-D series of at least 2 points")
    return np.cumsum(y - y.mean())


@lru_cache(maxsize=256)
def _trend_basis(m: int, order: int) -> np.ndarray:
    # orthonormal basis of the polynomials of degree <= order on 1..m
    idx = np.arange(1, m + 1, dtype=float)
    q, _ = np.linalg.qr(np.vander(idx, order + 1, increasing=True))
    q.setflags(write=False)
    return q


def fluctuation(x, m: int, poly_order: int = 1) -> float:
    """Detrended RMS fluctuation F(m) of a profile ``x``."""
    x = np.asarray(x, dtype=float)
    if m < poly_order + 2:
        raise DataError(f"scale {m} too small for order-{poly_order} detrending")
    if m > len(x):
        raise DataError(f"scale {m} exceeds series length {len(x)}")
    n_blocks = len(x) // m
    blocks = x[: n_blocks * m].reshape(n_blocks, m)
    q = _trend_basis(m, poly_order)
    resid = blocks - (blocks @ q) @ q.T
    return math.sqrt(float(np.sum(resid * resid)) / (n_blocks * m))


def fit_power_law(scales, fluctuations) -> tuple[float, float, float]:
    """OLS of ln F on ln m. Returns (slope, intercept, r_squared)."""
    lx = np.log(np.asarray(scales, dtype=float))
    ly = np.log(np.asarray(fluctuations, dtype=float))
    dx = lx - lx.mean()
    dy = ly - ly.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    sxy = float(dx @ dy)
    slope = sxy / sxx
    intercept = float(ly.mean() - slope * lx.mean())
    r2 = 1.0 if syy == 0.0 else min(1.0, sxy * sxy / (sxx * syy))
    return slope, intercept, r2


def hurst_dfa(y, config: DfaConfig | None = None) -> HurstEstimate:
    y = np.asarray(y, dtype=float)
    if config is None:
        config = DfaConfig(scales=tuple(default_scales(len(y))))
    if len(y) < 2 * config.scales[-1]:
        raise DataError(
            f"series of {len(y)} points is too short for scale {config.scales[-1]} "
            f"(needs {2 * config.scales[-1]})"
        )
    if not np.all(np.isfinite(y)):
        raise DataError("series contains non-finite values")
    if np.ptp(y) == 0.0:
        raise DegenerateSeriesError("series has zero variance")
    x = profile(y)
    fl = [fluctuation(x, m, config.poly_order) for m in config.scales]
    if min(fl) <= 0.0:
        raise DegenerateSeriesError("a fluctuation is zero; the log-log fit is undefined")
    h, intercept, r2 = fit_power_law(config.scales, fl)
    return HurstEstimate(
        h=h,
        intercept=intercept,
        r_squared=r2,
        n_points=len(fl),
        fluctuations=tuple(zip(config.scales, fl)),
    )
