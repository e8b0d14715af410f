import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from longmem.dfa import DfaConfig, default_scales, fit_power_law, fluctuation, hurst_dfa, profile
from longmem.errors import DataError, DegenerateSeriesError
from longmem.synth import fgn, spawn_seeds, white_noise

from .oracles import brute_fluctuation, exact_profile


def test_profile_examples():
    assert profile([2.5, 2.5, 2.5]).tolist() == [0.0, 0.0, 0.0]
    assert profile([1.0, -1.0]).tolist() == [1.0, 0.0]


def test_profile_matches_exact_cumsum():
    y = white_noise(1000, seed=5)
    x = profile(y)
    ref = np.array(exact_profile(y))
    assert np.max(np.abs(x - ref)) <= 1e-10 * np.max(np.abs(ref))
    assert abs(x[-1]) <= 1e-9 * len(y) * np.max(np.abs(y))


def test_profile_needs_two_points():
    with pytest.raises(DataError):
        profile([1.0])


@pytest.mark.parametrize("a, b", [(1.0, 0.0), (-3.5, 12.0), (1e-3, 1e3)])
@pytest.mark.parametrize("m", [3, 4, 7, 16])
def test_linear_profile_has_zero_fluctuation(a, b, m):
    x = a * np.arange(64) + b
    assert fluctuation(x, m, 1) <= 1e-10


def test_quadratic_removed_by_order_two():
    i = np.arange(60.0)
    assert fluctuation(0.5 * i**2 - 3 * i + 1, 5, 2) <= 1e-10
    assert fluctuation(0.5 * i**2 - 3 * i + 1, 5, 1) > 0.1


def test_alternating_block_example():
    x = [0, 1, 0, 1, 0, 1, 0, 1]
    # exact per-block least squares gives F^2 = 1/5
    assert fluctuation(x, 4, 1) == pytest.approx(math.sqrt(0.2), rel=1e-14)
    assert brute_fluctuation(x, 4, 1) == pytest.approx(math.sqrt(0.2), rel=1e-15)


def test_tail_excluded():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(10)
    y = x.copy()
    y[8:] = [1e6, -1e6]
    assert fluctuation(x, 4, 1) == fluctuation(y, 4, 1)
    assert fluctuation(x, 4, 1) == pytest.approx(brute_fluctuation(x[:8], 4, 1), rel=1e-12)


def test_fluctuation_preconditions():
    with pytest.raises(DataError):
        fluctuation(np.arange(5.0), 6, 1)
    with pytest.raises(DataError):
        fluctuation(np.arange(50.0), 2, 1)
    with pytest.raises(DataError):
        fluctuation(np.arange(50.0), 3, 2)


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_fluctuation_matches_brute_force(data):
    order = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(order + 2, 64))
    m = data.draw(st.integers(order + 2, n))
    x = data.draw(st.lists(st.floats(-100, 100), min_size=n, max_size=n))
    ref = brute_fluctuation(x, m, order)
    assume(ref > 1e-6)
    assert fluctuation(x, m, order) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("n, expected", [
    (500, [4, 8, 16, 32, 64, 128]),
    (256, [4, 8, 16, 32, 64, 128]),
    (10000, [4, 8, 16, 32, 64, 128]),
    (100, [4, 8, 16, 32]),
    (32, [4, 8, 16]),
])
def test_default_scales(n, expected):
    assert default_scales(n) == expected


def test_default_scales_too_short():
    with pytest.raises(DataError):
        default_scales(31)


@pytest.mark.parametrize("kwargs", [
    dict(scales=(4, 8)),
    dict(scales=(4, 8, 8)),
    dict(scales=(16, 8, 4)),
    dict(scales=(3, 8, 16), poly_order=2),
    dict(poly_order=0),
    dict(block_policy="forward_backward"),
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        DfaConfig(**kwargs)


@pytest.mark.parametrize("h", [0.2, 0.5, 0.77, 1.3])
def test_power_law_fit_exact(h):
    m = np.array([4, 8, 16, 32, 64, 128], dtype=float)
    slope, intercept, r2 = fit_power_law(m, 2.5 * m**h)
    assert abs(slope - h) <= 1e-12
    assert intercept == pytest.approx(math.log(2.5), abs=1e-12)
    assert abs(r2 - 1.0) <= 1e-12


def test_hurst_estimate_shape():
    est = hurst_dfa(white_noise(500, seed=1))
    assert est.n_points == 6 == len(est.fluctuations)
    assert [m for m, _ in est.fluctuations] == [4, 8, 16, 32, 64, 128]
    assert all(f > 0 for _, f in est.fluctuations)
    assert 0.0 <= est.r_squared <= 1.0


def test_hurst_degenerate_and_short():
    with pytest.raises(DegenerateSeriesError):
        hurst_dfa(np.full(500, 3.0))
    with pytest.raises(DataError):
        hurst_dfa(white_noise(255, seed=1), DfaConfig())
    # a pure linear trend in y gives a quadratic profile: nonzero, not degenerate
    hurst_dfa(np.arange(500.0))


def test_white_noise_h_half():
    hs = [hurst_dfa(white_noise(10000, seed=s)).h for s in spawn_seeds(101, 50)]
    assert abs(np.mean(hs) - 0.5) <= 0.05


def test_fgn_075():
    hs = [hurst_dfa(fgn(10000, 0.75, seed=s)).h for s in spawn_seeds(102, 50)]
    assert abs(np.mean(hs) - 0.75) <= 0.05


def test_h_increases_with_persistence():
    seeds = spawn_seeds(103, 20)
    low = np.mean([hurst_dfa(fgn(10000, 0.3, seed=s)).h for s in seeds])
    high = np.mean([hurst_dfa(fgn(10000, 0.8, seed=s)).h for s in seeds])
    assert low < high


@pytest.mark.parametrize("h", [0.3, 0.5, 0.8])
def test_fluctuation_grows_with_scale(h):
    ok = 0
    seeds = spawn_seeds(104, 40)
    for s in seeds:
        f = [v for _, v in hurst_dfa(fgn(10000, h, seed=s)).fluctuations]
        ok += all(b >= a for a, b in zip(f, f[1:]))
    assert ok >= 0.95 * len(seeds)


@given(
    st.integers(0, 2**32),
    st.floats(0.01, 100),
    st.booleans(),
    st.floats(-100, 100),
)
@settings(max_examples=50, deadline=None)
def test_affine_invariance(seed, a, flip, b):
    y = white_noise(512, seed=seed)
    a = -a if flip else a
    base = hurst_dfa(y)
    moved = hurst_dfa(a * y + b)
    assert abs(moved.h - base.h) <= 1e-12
    assert moved.intercept == pytest.approx(base.intercept + math.log(abs(a)), abs=1e-10)
