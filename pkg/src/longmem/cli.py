"""Command-line entry point: ``longmem <subcommand> [flags]``.

Precedence is flags > ``--config`` JSON file > built-in defaults. The only
environment variable consulted is ``LONGMEM_OUTPUT_DIR``, which prefixes a
relative ``--output`` path. Exit codes: 0 success, 1 data error, 2 usage
error. All output is built in memory and written only once the whole run has
succeeded, so failures never leave partial files.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .dfa import DfaConfig, HurstEstimate, default_scales, hurst_dfa
from .errors import DataError
from .ingest import CsvConfig, parse_daily_csv, parse_tick_csv, read_table, read_values, write_table
from .rolling import ALIGNMENTS, HURST_COLUMNS, HurstSeries, align_hurst_with, rolling_hurst
from .series import GAP_POLICIES, ReturnSeries, SamplingSpec, log_returns, resample_last
from .stats import STATS_COLUMNS, describe, rolling_spearman, spearman_rho
from .synth import KINDS, GeneratorSpec, generate, regime_concat, spawn_seeds

INPUT_KINDS = ("ticks", "daily", "series")
OUTPUT_ENV = "LONGMEM_OUTPUT_DIR"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = ""
    input: str | None = None
    kind: str = "ticks"
    interval_hours: list[int] = field(default_factory=lambda: list(range(5, 13)))
    anchor: int | None = None
    gap_policy: str = "carry_forward"
    scale: float = 100.0
    window: int = 500
    step: int = 1
    scales: list[int] | None = None
    poly_order: int = 1
    format: str = "csv"
    output: str | None = None
    seed: int = 0
    alignment: str = "window_end"
    workers: int = 1
    # spearman
    covariate: str | None = None
    rho_window: int = 500
    # dfa
    per_scale: bool = False
    # synth
    process: str = "white_noise"
    n: int = 1000
    h: float = 0.5
    phi: float = 0.0
    sigma: float = 1.0
    segment: list[str] = field(default_factory=list)

    def dfa_config(self) -> DfaConfig:
        scales = self.scales if self.scales is not None else default_scales(self.window)
        return DfaConfig(scales=tuple(scales), poly_order=self.poly_order)

    def describe_json(self, **extra) -> str:
        """The effective configuration of this command, as one JSON line."""
        keys = ["command", "format", "output", *_COMMAND_KEYS[self.command]]
        d = {k: getattr(self, k) for k in keys}
        if "scales" in d and d["scales"] is None and self.command == "rolling-hurst":
            d["scales"] = list(self.dfa_config().scales)
        d.update(extra)
        return f"longmem {__version__} " + json.dumps(d, sort_keys=True)


_DATA_KEYS = ["input", "kind", "interval_hours", "anchor", "gap_policy", "scale"]
_COMMAND_KEYS = {
    "ingest-check": _DATA_KEYS,
    "stats": _DATA_KEYS,
    "returns": _DATA_KEYS,
    "dfa": [*_DATA_KEYS, "scales", "poly_order", "per_scale"],
    "rolling-hurst": [*_DATA_KEYS, "scales", "poly_order", "window", "step", "alignment"],
    "spearman": ["input", "covariate", "window", "step", "alignment", "rho_window"],
    "synth": ["process", "n", "h", "phi", "sigma", "seed", "segment"],
}


# -- argument parsing ---------------------------------------------------------


def _int_list(text: str) -> list[int]:
    out: list[int] = []
    try:
        for part in str(text).split(","):
            part = part.strip()
            if "-" in part[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like '5,6' or '5-12', got {text!r}") from None
    return out


def _build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = argparse.ArgumentParser(prog="longmem", description="Long-memory analysis of price series.")
    parser.add_argument("--version", action="version", version=f"longmem {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=S, help="JSON file of option defaults")
    common.add_argument("--format", choices=("csv", "json"), default=S)
    common.add_argument("--output", "-o", default=S, help="output path (default stdout)")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", "-i", default=S)
    data.add_argument("--kind", choices=INPUT_KINDS, default=S)
    data.add_argument("--interval-hours", dest="interval_hours", type=_int_list, default=S,
                      help="tick sampling intervals, e.g. 5 or 5-12 or 5,8 (default 5-12)")
    data.add_argument("--anchor", type=int, default=S, help="epoch seconds of the first grid point")
    data.add_argument("--gap-policy", dest="gap_policy", choices=GAP_POLICIES, default=S)
    data.add_argument("--scale", type=float, default=S, help="return multiplier (default 100)")

    dfa = argparse.ArgumentParser(add_help=False)
    dfa.add_argument("--scales", type=_int_list, default=S)
    dfa.add_argument("--poly-order", dest="poly_order", type=int, default=S)

    roll = argparse.ArgumentParser(add_help=False)
    roll.add_argument("--window", type=int, default=S)
    roll.add_argument("--step", type=int, default=S)
    roll.add_argument("--alignment", choices=ALIGNMENTS, default=S)

    sub.add_parser("ingest-check", parents=[common, data], help="parse an input file and summarize it")
    sub.add_parser("stats", parents=[common, data], help="descriptive statistics of returns")
    sub.add_parser("returns", parents=[common, data], help="emit log returns")
    p = sub.add_parser("dfa", parents=[common, data, dfa], help="one DFA fit over the whole series")
    p.add_argument("--per-scale", dest="per_scale", action="store_true", default=S,
                   help="emit (m, F(m)) rows instead of the fit summary")
    p = sub.add_parser("rolling-hurst", parents=[common, data, dfa, roll], help="sliding-window Hurst exponent")
    p.add_argument("--workers", type=int, default=S)
    p = sub.add_parser("spearman", parents=[common, roll], help="rolling Spearman rho of H vs a covariate")
    p.add_argument("--input", "-i", default=S, help="Hurst table written by rolling-hurst")
    p.add_argument("--covariate", default=S, help="single-column file on the returns grid")
    p.add_argument("--rho-window", dest="rho_window", type=int, default=S)
    p = sub.add_parser("synth", parents=[common], help="generate a synthetic series")
    p.add_argument("--kind", dest="process", choices=KINDS, default=S)
    p.add_argument("--n", type=int, default=S)
    p.add_argument("--h", type=float, default=S)
    p.add_argument("--phi", type=float, default=S)
    p.add_argument("--sigma", type=float, default=S)
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--segment", action="append", default=S,
                   help="regime segment 'kind,n=..,h=..,phi=..,sigma=..,seed=..' (repeatable)")
    return parser


def _load_config_file(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    names = {f.name for f in dataclasses.fields(RunConfig)} - {"command"}
    out = {}
    for key, value in raw.items():
        k = key.replace("-", "_")
        if k not in names:
            raise UsageError(f"unknown key {key!r} in config file {path}")
        if k in ("interval_hours", "scales") and not isinstance(value, list) and value is not None:
            try:
                value = _int_list(value)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"{key}: {exc}") from None
        out[k] = value
    return out


def _validate(cfg: RunConfig) -> None:
    """Check the configuration before any data is read."""
    if cfg.format not in ("csv", "json"):
        raise UsageError(f"--format must be csv or json, got {cfg.format!r}")
    if cfg.command == "synth":
        if cfg.n < 1:
            raise UsageError("--n must be >= 1")
        if not 0 <= cfg.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        try:
            _synth_specs(cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return
    if cfg.input is None:
        raise UsageError("--input is required")
    if cfg.command == "spearman":
        if cfg.covariate is None:
            raise UsageError("--covariate is required")
        if cfg.rho_window < 3:
            raise UsageError("--rho-window must be >= 3")
    if cfg.window < 1:
        raise UsageError("--window must be >= 1")
    if cfg.step < 1:
        raise UsageError("--step must be >= 1")
    if cfg.alignment not in ALIGNMENTS:
        raise UsageError(f"--alignment must be one of {ALIGNMENTS}")
    if cfg.command == "spearman":
        return
    if cfg.kind not in INPUT_KINDS:
        raise UsageError(f"--kind must be one of {INPUT_KINDS}")
    if not cfg.interval_hours:
        raise UsageError("--interval-hours is empty")
    try:
        for h in cfg.interval_hours:
            SamplingSpec(h, cfg.anchor, cfg.gap_policy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not cfg.scale > 0:
        raise UsageError("--scale must be positive")
    if cfg.workers < 1:
        raise UsageError("--workers must be >= 1")
    if cfg.command in ("dfa", "rolling-hurst"):
        try:
            if cfg.command == "rolling-hurst" or cfg.scales is not None:
                dcfg = cfg.dfa_config()
            else:
                dcfg = DfaConfig(poly_order=cfg.poly_order)
        except (ValueError, DataError) as exc:
            raise UsageError(str(exc)) from None
        if cfg.command == "rolling-hurst" and cfg.window < 2 * dcfg.scales[-1]:
            raise UsageError(f"--window {cfg.window} is shorter than twice the largest scale {dcfg.scales[-1]}")


def parse_config(argv: list[str] | None = None) -> RunConfig:
    ns = vars(_build_parser().parse_args(argv))
    merged: dict = {}
    if "config" in ns:
        merged.update(_load_config_file(ns.pop("config")))
    merged.update(ns)
    cfg = RunConfig(**merged)
    if cfg.interval_hours is not None:
        cfg.interval_hours = list(cfg.interval_hours)
    _validate(cfg)
    return cfg


# -- pipeline -----------------------------------------------------------------


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except FileNotFoundError:
        raise DataError(f"input file not found: {path}") from None
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _return_series(cfg: RunConfig) -> list[tuple[int | None, ReturnSeries]]:
    """Load the input and turn it into one return series per interval."""
    raw = _read_bytes(cfg.input)
    if cfg.kind == "ticks":
        ticks = parse_tick_csv(raw, CsvConfig())
        return [
            (h, log_returns(resample_last(ticks, SamplingSpec(h, cfg.anchor, cfg.gap_policy)), cfg.scale))
            for h in cfg.interval_hours
        ]
    if cfg.kind == "daily":
        return [(None, log_returns(parse_daily_csv(raw, CsvConfig()), cfg.scale))]
    return [(None, ReturnSeries(read_values(raw), scale=1.0))]


def _ingest_check(cfg: RunConfig):
    raw = _read_bytes(cfg.input)
    if cfg.kind == "ticks":
        t = parse_tick_csv(raw)
        ts, px = t.timestamps, t.prices
    elif cfg.kind == "daily":
        p = parse_daily_csv(raw)
        ts, px = p.timestamps, p.prices
    else:
        px = read_values(raw)
        ts = None
    row = {
        "kind": cfg.kind,
        "n": len(px),
        "first_timestamp": None if ts is None else int(ts[0]),
        "last_timestamp": None if ts is None else int(ts[-1]),
        "min": float(np.min(px)),
        "max": float(np.max(px)),
    }
    return [(None, [row], list(row), cfg.describe_json())]


def _stats(cfg: RunConfig):
    rows = [describe(r) for _, r in _return_series(cfg)]
    return [(None, rows, STATS_COLUMNS, cfg.describe_json())]


def _returns(cfg: RunConfig):
    out = []
    for hours, rs in _return_series(cfg):
        labels = rs.labels
        rows = [
            {"index": i, "timestamp": None if labels is None else int(labels[i]), "return": float(v)}
            for i, v in enumerate(rs.values)
        ]
        out.append((hours, rows, ["index", "timestamp", "return"], cfg.describe_json(interval_hours=hours)))
    return out


def _dfa(cfg: RunConfig):
    rows = []
    for hours, rs in _return_series(cfg):
        dcfg = cfg.dfa_config() if cfg.scales is not None else DfaConfig(
            scales=tuple(default_scales(len(rs))), poly_order=cfg.poly_order
        )
        est = hurst_dfa(rs.values, dcfg)
        if cfg.per_scale:
            rows.extend({"interval_hours": hours, "m": m, "fluctuation": f} for m, f in est.fluctuations)
        else:
            rows.append({"interval_hours": hours, "h": est.h, "intercept": est.intercept,
                         "r_squared": est.r_squared, "n_points": est.n_points})
    columns = ["interval_hours", "m", "fluctuation"] if cfg.per_scale else \
        ["interval_hours", "h", "intercept", "r_squared", "n_points"]
    return [(None, rows, columns, cfg.describe_json())]


def _rolling_hurst(cfg: RunConfig):
    out = []
    dcfg = cfg.dfa_config()
    for hours, rs in _return_series(cfg):
        hs = rolling_hurst(rs, cfg.window, cfg.step, dcfg, workers=cfg.workers)
        out.append((hours, hs.rows(cfg.alignment), HURST_COLUMNS, cfg.describe_json(interval_hours=hours)))
    return out


def _hurst_from_table(rows: list[dict], window: int) -> HurstSeries:
    if not rows:
        raise DataError("Hurst table has no rows")
    if "offset" not in rows[0] or "h" not in rows[0]:
        raise DataError("Hurst table must have 'offset' and 'h' columns")
    offsets = np.array([int(r["offset"]) for r in rows], dtype=np.int64)
    h = [float(r["h"]) if r["h"] not in ("", None) else None for r in rows]
    estimates = [None if v is None else HurstEstimate(v, float("nan"), float("nan"), 0) for v in h]
    step = int(offsets[1] - offsets[0]) if len(offsets) > 1 else 1
    return HurstSeries(offsets, estimates, window, step)


def _spearman(cfg: RunConfig):
    series = _hurst_from_table(read_table(_read_bytes(cfg.input)), cfg.window)
    cov = read_values(_read_bytes(cfg.covariate))
    h, c = align_hurst_with(series, cov, cfg.alignment)
    if len(h) < cfg.rho_window:
        raise DataError(f"{len(h)} aligned pairs are fewer than --rho-window {cfg.rho_window}")
    ok = np.isfinite(h)
    whole = spearman_rho(h[ok], c[ok])
    print(f"whole-period spearman rho: {whole:.17g} (n={int(ok.sum())})", file=sys.stderr)
    rows = [{"offset": off, "rho": rho} for off, rho in rolling_spearman(h, c, cfg.rho_window, cfg.step)]
    return [(None, rows, ["offset", "rho"], cfg.describe_json(whole_period_rho=whole))]


def _synth_specs(cfg: RunConfig) -> list[GeneratorSpec]:
    if not cfg.segment:
        return [GeneratorSpec(cfg.process, cfg.n, cfg.h, cfg.phi, cfg.sigma, cfg.seed)]
    seeds = spawn_seeds(cfg.seed, len(cfg.segment))
    specs = []
    for text, seed in zip(cfg.segment, seeds):
        kind, *pairs = [p.strip() for p in text.split(",")]
        kw: dict = {"seed": seed, "sigma": cfg.sigma}
        for pair in pairs:
            key, _, value = pair.partition("=")
            if key not in ("n", "h", "phi", "sigma", "seed"):
                raise ValueError(f"unknown segment field {key!r} in {text!r}")
            try:
                kw[key] = int(value) if key in ("n", "seed") else float(value)
            except ValueError:
                raise ValueError(f"bad value for {key!r} in segment {text!r}") from None
        if "n" not in kw:
            raise ValueError(f"segment {text!r} needs n=")
        specs.append(GeneratorSpec(kind, **kw))
    return specs


def _synth(cfg: RunConfig):
    specs = _synth_specs(cfg)
    values = regime_concat(specs) if cfg.segment else generate(specs[0])
    rows = [{"value": float(v)} for v in values]
    return [(None, rows, ["value"], cfg.describe_json())]


COMMANDS = {
    "ingest-check": _ingest_check,
    "stats": _stats,
    "returns": _returns,
    "dfa": _dfa,
    "rolling-hurst": _rolling_hurst,
    "spearman": _spearman,
    "synth": _synth,
}


def _output_path(cfg: RunConfig, hours: int | None, multi: bool) -> Path | None:
    if cfg.output is None:
        return None
    path = Path(cfg.output)
    if not path.is_absolute() and os.environ.get(OUTPUT_ENV):
        path = Path(os.environ[OUTPUT_ENV]) / path
    if multi and hours is not None:
        path = path.with_name(f"{path.stem}_{hours}h{path.suffix}")
    return path


def run(cfg: RunConfig) -> list[tuple[Path | None, bytes]]:
    """Execute a validated configuration; return (path, bytes) outputs."""
    tables = COMMANDS[cfg.command](cfg)
    multi = len(tables) > 1
    outputs = []
    for hours, rows, columns, comment in tables:
        data = write_table(rows, cfg.format, columns=columns, comment=comment if cfg.format == "csv" else None)
        outputs.append((_output_path(cfg, hours, multi), data))
    return outputs


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"longmem: usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code or 0)
    try:
        outputs = run(cfg)
    except (DataError, ValueError) as exc:
        print(f"longmem: error: {exc}", file=sys.stderr)
        return 1
    for path, data in outputs:
        if path is None:
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
    return 0


if __name__ == "__main__":
    sys.exit(main())
