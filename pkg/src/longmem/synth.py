"""Synthetic series with known memory structure, used as estimator oracles.

Randomness: every generator draws from NumPy's PCG64 bit generator seeded
through ``SeedSequence(seed)``; Gaussian variates come from
``Generator.standard_normal`` (ziggurat). A generator call consumes its own
stream, so outputs are pure functions of the arguments. Independent seeds for
Monte Carlo loops are derived with :func:`spawn_seeds`
(``SeedSequence(base).spawn(k)``, first 64-bit word of each child's state).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

KINDS = ("white_noise", "fgn", "ar1")
EIGEN_TOL = 1e-10


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def spawn_seeds(base: int, count: int) -> list[int]:
    children = np.random.SeedSequence(int(base)).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def _check_sigma(sigma: float) -> None:
    if not sigma >= 0:
        raise ValueError(f"sigma must be non-negative, got {sigma!r}")


def white_noise(n: int, sigma: float = 1.0, seed: int = 0) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_sigma(sigma)
    return sigma * _rng(seed).standard_normal(n)


def fgn_autocovariance(k, h: float, sigma: float = 1.0) -> np.ndarray:
    """gamma(k) = sigma^2/2 (|k+1|^2H - 2|k|^2H + |k-1|^2H)."""
    k = np.abs(np.asarray(k, dtype=float))
    e = 2.0 * h
    return 0.5 * sigma**2 * (np.abs(k + 1) ** e - 2.0 * k**e + np.abs(k - 1) ** e)


def _fgn_circulant(gamma: np.ndarray, rng: np.random.Generator) -> np.ndarray | None:
    n = len(gamma) - 1
    row = np.concatenate([gamma, gamma[-2:0:-1]])  # length 2n
    lam = np.fft.fft(row).real
    if lam.min() < -EIGEN_TOL:
        return None
    lam = np.clip(lam, 0.0, None)
    size = len(row)
    z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return np.fft.fft(np.sqrt(lam / size) * z).real[:n]


def _fgn_levinson(gamma: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # sequential conditional sampling via Durbin-Levinson; O(n^2)
    n = len(gamma) - 1
    z = rng.standard_normal(n)
    x = np.empty(n)
    v = gamma[0]
    x[0] = np.sqrt(v) * z[0]
    phi = np.zeros(0)
    for t in range(1, n):
        kappa = (gamma[t] - phi @ gamma[t - 1 : 0 : -1]) / v if t > 1 else gamma[1] / v
        phi = np.concatenate([phi - kappa * phi[::-1], [kappa]])
        v *= 1.0 - kappa * kappa
        # phi[j-1] weights x[t-j]
        x[t] = phi @ x[t - 1 :: -1] + np.sqrt(max(v, 0.0)) * z[t]
    return x


def fgn(n: int, h: float, sigma: float = 1.0, seed: int = 0, method: str = "auto") -> np.ndarray:
    """Fractional Gaussian noise with Hurst exponent ``h``.

    ``method="auto"`` uses circulant embedding and falls back to
    Durbin-Levinson if the embedding has an eigenvalue below -1e-10;
    ``"circulant"`` and ``"levinson"`` force one route.
    """
    if not 0.0 < h < 1.0:
        raise ValueError(f"h must lie in (0, 1), got {h!r}")
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_sigma(sigma)
    if method not in ("auto", "circulant", "levinson"):
        raise ValueError(f"unknown method {method!r}")
    gamma = fgn_autocovariance(np.arange(n + 1), h, 1.0)
    rng = _rng(seed)
    out = None
    if method != "levinson":
        out = _fgn_circulant(gamma, rng)
        if out is None and method == "circulant":
            raise ValueError("circulant embedding is not non-negative definite")
    if out is None:
        out = _fgn_levinson(gamma, _rng(seed))
    return sigma * out


def ar1(n: int, phi: float, sigma: float = 1.0, seed: int = 0) -> np.ndarray:
    """Stationary AR(1): y[t] = phi y[t-1] + eps[t], y[0] from the stationary law."""
    if not -1.0 < phi < 1.0:
        raise ValueError(f"|phi| must be < 1, got {phi!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_sigma(sigma)
    z = _rng(seed).standard_normal(n)
    y0 = sigma / np.sqrt(1.0 - phi * phi) * z[0]
    if n == 1:
        return np.array([y0])
    rest = lfilter([1.0], [1.0, -phi], sigma * z[1:], zi=[phi * y0])[0]
    return np.concatenate([[y0], rest])


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    h: float = 0.5
    phi: float = 0.0
    sigma: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.kind == "fgn" and not 0.0 < self.h < 1.0:
            raise ValueError(f"h must lie in (0, 1), got {self.h!r}")
        if self.kind == "ar1" and not -1.0 < self.phi < 1.0:
            raise ValueError(f"|phi| must be < 1, got {self.phi!r}")
        _check_sigma(self.sigma)


def generate(spec: GeneratorSpec) -> np.ndarray:
    if spec.kind == "white_noise":
        return white_noise(spec.n, spec.sigma, spec.seed)
    if spec.kind == "fgn":
        return fgn(spec.n, spec.h, spec.sigma, spec.seed)
    return ar1(spec.n, spec.phi, spec.sigma, spec.seed)


def regime_concat(specs: list[GeneratorSpec]) -> np.ndarray:
    """Concatenate independently generated segments, in order."""
    if not specs:
        raise ValueError("regime_concat needs at least one segment")
    return np.concatenate([generate(s) for s in specs])
