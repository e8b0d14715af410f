"""Exit criteria. Each test prints one PASS/FAIL line (also collected into the
pytest terminal summary under "acceptance criteria")."""

import io
import time

import numpy as np
import pytest

import longmem.dfa as dfa_mod
from longmem.cli import main
from longmem.dfa import DfaConfig, default_scales, fluctuation, hurst_dfa
from longmem.ingest import read_table, write_table, write_tick_csv
from longmem.rolling import rolling_hurst
from longmem.series import SamplingSpec, log_returns, resample_last
from longmem.stats import STATS_COLUMNS, describe, jarque_bera, spearman_rho
from longmem.synth import GeneratorSpec, fgn, regime_concat, spawn_seeds, white_noise

from .oracles import brute_fluctuation
from .test_stats import brute_spearman


def test_ac01_jarque_bera_reference_values(report):
    gbp = jarque_bera(1404, 2.2166, 36.1865)
    eur = jarque_bera(1404, -0.0418, 4.8014)
    ok = abs(gbp - 65578.46) <= 0.5 and abs(eur - 190.25) <= 0.05
    assert report("AC1 JB identity", ok, f"GBP {gbp:.4f} (65578.46 +/- 0.5), EUR {eur:.4f} (190.25 +/- 0.05)")


def test_ac02_default_scales(report):
    got = default_scales(500)
    assert report("AC2 default scales", got == [4, 8, 16, 32, 64, 128], f"default_scales(500) = {got}")


def test_ac03_dfa_calibration(report):
    t0 = time.perf_counter()
    means = {}
    for k, h in enumerate([0.3, 0.5, 0.7, 0.8]):
        means[f"fgn{h}"] = (h, np.mean([hurst_dfa(fgn(10000, h, seed=s)).h for s in spawn_seeds(3000 + k, 50)]))
    means["white"] = (0.5, np.mean([hurst_dfa(white_noise(10000, seed=s)).h for s in spawn_seeds(3100, 50)]))
    elapsed = time.perf_counter() - t0
    ok = all(abs(m - h) <= 0.05 for h, m in means.values()) and elapsed < 60
    detail = ", ".join(f"{k}: {m:.4f}" for k, (_, m) in means.items()) + f"; {elapsed:.1f}s"
    assert report("AC3 DFA calibration (+/-0.05, 50 seeds)", ok, detail)


def test_ac04_fluctuation_oracle_equivalence(report):
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        order = int(rng.integers(1, 4))
        n = int(rng.integers(order + 2, 65))
        m = int(rng.integers(order + 2, n + 1))
        x = np.cumsum(rng.standard_normal(n)) * rng.uniform(0.1, 10)
        ref = brute_fluctuation(x.tolist(), m, order)
        worst = max(worst, abs(fluctuation(x, m, order) - ref) / ref)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 5
    assert report("AC4 oracle equivalence", ok, f"max rel err {worst:.2e} over 200 instances; {elapsed:.2f}s")


def test_ac05_exact_null_detrending(report, monkeypatch):
    i = np.arange(64.0)
    worst_f = max(fluctuation(a * i + b, m, 1) for a in (-7.0, 0.3, 2.5) for b in (-1e2, 0, 3) for m in (3, 4, 8, 16, 64))
    worst_h = worst_r2 = 0.0
    for h in (0.25, 0.5, 0.8, 1.1):
        monkeypatch.setattr(dfa_mod, "fluctuation", lambda x, m, order, h=h: float(m) ** h)
        est = hurst_dfa(white_noise(500, seed=1), DfaConfig())
        worst_h = max(worst_h, abs(est.h - h))
        worst_r2 = max(worst_r2, abs(est.r_squared - 1.0))
    ok = worst_f <= 1e-10 and worst_h <= 1e-12 and worst_r2 <= 1e-12
    assert report("AC5 exact-null detrending", ok, f"max F on lines {worst_f:.1e}; slope err {worst_h:.1e}; |r2-1| {worst_r2:.1e}")


def test_ac06_affine_invariance(report):
    rng = np.random.default_rng(6)
    worst = 0.0
    for s in spawn_seeds(6, 100):
        y = fgn(1000, rng.uniform(0.2, 0.9), seed=s)
        a = rng.uniform(0.05, 20) * rng.choice([-1, 1])
        b = rng.uniform(-50, 50)
        worst = max(worst, abs(hurst_dfa(a * y + b).h - hurst_dfa(y).h))
    assert report("AC6 affine invariance", worst <= 1e-12, f"max |dH| {worst:.1e} over 100 draws")


def test_ac07_regime_detection(report):
    t0 = time.perf_counter()
    drops = []
    for s1, s2 in np.reshape(spawn_seeds(7, 20), (10, 2)).tolist():
        y = regime_concat([GeneratorSpec("fgn", 1500, h=0.8, seed=s1), GeneratorSpec("fgn", 1500, h=0.5, seed=s2)])
        h = rolling_hurst(y, 500, 1).h
        drops.append(h[:500].mean() - h[-500:].mean())
    elapsed = time.perf_counter() - t0
    ok = min(drops) >= 0.15 and elapsed < 120
    assert report("AC7 regime detection", ok, f"min drop {min(drops):.4f}, mean {np.mean(drops):.4f} over 10 seeds; {elapsed:.1f}s")


def test_ac08_rolling_counts_and_determinism(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    config = DfaConfig(scales=(4, 8, 16))
    counts_ok = True
    for _ in range(50):
        n = int(rng.integers(32, 400))
        win = int(rng.integers(32, n + 1))
        step = int(rng.integers(1, 30))
        hs = rolling_hurst(white_noise(n, seed=n), win, step, config)
        counts_ok &= len(hs) == (n - win) // step + 1 and bool(np.all(np.diff(hs.offsets) == step))
    y = fgn(1200, 0.65, seed=8)
    tables = [write_table(rolling_hurst(y, 500, 1).rows(), "csv") for _ in range(2)]
    parallel = write_table(rolling_hurst(y, 500, 1, workers=4).rows(), "csv")
    elapsed = time.perf_counter() - t0
    ok = counts_ok and tables[0] == tables[1] == parallel and elapsed < 10
    detail = f"count law {'ok' if counts_ok else 'violated'}; repeat identical {tables[0] == tables[1]}; " \
             f"parallel == serial {tables[0] == parallel}; {elapsed:.2f}s"
    assert report("AC8 rolling counts/determinism", ok, detail)


def test_ac09_spearman(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    x = rng.standard_normal(50)
    mono = spearman_rho(x, np.exp(x)) == 1.0 and spearman_rho(x, -x**3) == -1.0
    worst = 0.0
    done = 0
    while done < 100:
        n = int(rng.integers(3, 16))
        a = rng.integers(0, 4, n).tolist()
        b = rng.integers(0, 4, n).tolist()
        if len(set(a)) < 2 or len(set(b)) < 2:
            continue
        worst = max(worst, abs(spearman_rho(a, b) - brute_spearman(a, b)))
        done += 1
    y = rng.standard_normal(50)
    rho = spearman_rho(x, y)
    inv = max(abs(spearman_rho(np.exp(x), y) - rho), abs(spearman_rho(x, 3 * y + 1) - rho))
    elapsed = time.perf_counter() - t0
    ok = mono and worst <= 1e-12 and inv <= 1e-12 and elapsed < 5
    assert report("AC9 Spearman", ok, f"monotone {mono}; tie err {worst:.1e} (100 instances); transform err {inv:.1e}")


def test_ac10_pipeline_identity(report, tmp_path, synthetic_ticks, capsysbinary):
    t0 = time.perf_counter()
    sink = io.BytesIO()
    write_tick_csv(synthetic_ticks, sink)
    path = tmp_path / "ticks.csv"
    path.write_bytes(sink.getvalue())
    code = main(["stats", "--input", str(path), "--kind", "ticks", "--interval-hours", "5"])
    (row,) = read_table(capsysbinary.readouterr().out)
    manual = describe(log_returns(resample_last(synthetic_ticks, SamplingSpec(5)), 100.0))
    mismatched = [c for c in STATS_COLUMNS if float(row[c]) != float(getattr(manual, c))]
    elapsed = time.perf_counter() - t0
    ok = code == 0 and not mismatched and elapsed < 5
    assert report("AC10 pipeline identity", ok, f"n={manual.n}; mismatched fields {mismatched or 'none'}")
