"""Reading tick/daily CSV files and writing result tables.

Tick files follow the bitcoincharts layout: one ``unixtime,price,volume`` row
per trade, no header. Daily files carry a ``date,close`` header and ISO-8601
dates. Tables are written as CSV (RFC-4180 quoting) or as a JSON array of
flat records, with reals rendered to 17 significant digits.
"""

from __future__ import annotations

import csv
import dataclasses
import datetime as dt
import io
import json
import math
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import IO, Any

import numpy as np

from .errors import EmptyInputError, ParseError, ValidationError
from .series import PriceSeries

_EPOCH = dt.date(1970, 1, 1)


@dataclass(frozen=True)
class CsvConfig:
    delimiter: str = ","
    # None means "use the format's default" (no header for ticks, header for daily)
    skip_header: bool | None = None


@dataclass(frozen=True)
class TickRecord:
    timestamp: int
    price: float
    volume: float


@dataclass(frozen=True, eq=False)
class TickSeries:
    """Trades ordered by timestamp, stored column-wise.

    Equal timestamps are allowed; their arrival order is preserved.
    """

    timestamps: np.ndarray
    prices: np.ndarray
    volumes: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=np.int64)
        px = np.asarray(self.prices, dtype=float)
        vol = np.zeros(len(px)) if self.volumes is None else np.asarray(self.volumes, dtype=float)
        if not (len(ts) == len(px) == len(vol)):
            raise ValueError("timestamps, prices and volumes must have equal length")
        if np.any(np.diff(ts) < 0):
            raise ValueError("tick timestamps must be non-decreasing")
        if np.any(~(px > 0)):
            raise ValueError("tick prices must be positive")
        if np.any(~(vol >= 0)):
            raise ValueError("tick volumes must be non-negative")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", px)
        object.__setattr__(self, "volumes", vol)

    @classmethod
    def from_records(cls, records: Sequence[TickRecord]) -> TickSeries:
        return cls(
            np.array([r.timestamp for r in records], dtype=np.int64),
            np.array([r.price for r in records], dtype=float),
            np.array([r.volume for r in records], dtype=float),
        )

    @property
    def records(self) -> list[TickRecord]:
        return list(self)

    def __len__(self) -> int:
        return len(self.prices)

    def __iter__(self) -> Iterator[TickRecord]:
        for t, p, v in zip(self.timestamps.tolist(), self.prices.tolist(), self.volumes.tolist()):
            yield TickRecord(t, p, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TickSeries):
            return NotImplemented
        return (
            np.array_equal(self.timestamps, other.timestamps)
            and np.array_equal(self.prices, other.prices)
            and np.array_equal(self.volumes, other.volumes)
        )


def _read_text(source: IO[bytes] | bytes | str) -> str:
    if isinstance(source, str):
        return source
    raw = source if isinstance(source, (bytes, bytearray)) else source.read()
    try:
        return bytes(raw).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not valid UTF-8 ({exc})") from None


def _rows(text: str, config: CsvConfig, default_header: bool):
    """Yield (line_number, fields) for every non-blank data row."""
    skip = default_header if config.skip_header is None else config.skip_header
    reader = csv.reader(io.StringIO(text), delimiter=config.delimiter)
    for fields in reader:
        if skip:
            skip = False
            continue
        if not fields or all(not f.strip() for f in fields):
            continue
        yield reader.line_num, fields


def _real(token: str, line: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"cannot parse {what} {token!r} as a number", line) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite {what} {token!r}", line)
    return value


def parse_tick_csv(source: IO[bytes] | bytes, config: CsvConfig = CsvConfig()) -> TickSeries:
    """Parse ``unixtime,price,volume`` rows into a TickSeries.

    Rows are stably sorted by timestamp. Raises ParseError (with the line
    number) for malformed rows, ValidationError for invariant violations and
    EmptyInputError when the input holds no rows.
    """
    text = _read_text(source)
    ts: list[int] = []
    px: list[float] = []
    vol: list[float] = []
    for line, fields in _rows(text, config, default_header=False):
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", line)
        try:
            t = int(fields[0].strip())
        except ValueError:
            raise ParseError(f"cannot parse timestamp {fields[0]!r} as an integer", line) from None
        p = _real(fields[1], line, "price")
        v = _real(fields[2], line, "volume")
        if t < 0:
            raise ValidationError(f"negative timestamp {t}", line)
        if p <= 0:
            raise ValidationError(f"non-positive price {p!r}", line)
        if v < 0:
            raise ValidationError(f"negative volume {v!r}", line)
        ts.append(t)
        px.append(p)
        vol.append(v)
    if not ts:
        raise EmptyInputError("no tick rows found; is this the right file?")
    t_arr = np.array(ts, dtype=np.int64)
    order = np.argsort(t_arr, kind="stable")
    return TickSeries(t_arr[order], np.array(px)[order], np.array(vol)[order])


def parse_daily_csv(source: IO[bytes] | bytes, config: CsvConfig = CsvConfig()) -> PriceSeries:
    """Parse a ``date,close`` file (with header) into a PriceSeries.

    Dates must be strictly increasing. Missing calendar days are not filled:
    the series holds only the observed days, with their midnight-UTC epoch
    timestamps as labels.
    """
    text = _read_text(source)
    labels: list[int] = []
    prices: list[float] = []
    prev: dt.date | None = None
    for line, fields in _rows(text, config, default_header=True):
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", line)
        try:
            day = dt.date.fromisoformat(fields[0].strip())
        except ValueError:
            raise ParseError(f"cannot parse date {fields[0]!r}", line) from None
        close = _real(fields[1], line, "close")
        if close <= 0:
            raise ValidationError(f"non-positive close {close!r}", line)
        if prev is not None and day <= prev:
            kind = "duplicate" if day == prev else "decreasing"
            raise ValidationError(f"{kind} date {day.isoformat()}", line)
        prev = day
        labels.append((day - _EPOCH).days * 86400)
        prices.append(close)
    if not prices:
        raise EmptyInputError("no daily rows found; is this the right file?")
    return PriceSeries(
        grid_start=labels[0],
        interval=0,
        prices=np.array(prices),
        labels=np.array(labels, dtype=np.int64),
    )


def write_tick_csv(ticks: TickSeries, sink: IO[bytes]) -> None:
    """Write ticks in the headerless ``unixtime,price,volume`` layout."""
    buf = io.StringIO()
    for r in ticks:
        buf.write(f"{r.timestamp},{_fmt(r.price)},{_fmt(r.volume)}\n")
    sink.write(buf.getvalue().encode("utf-8"))


# -- tables -----------------------------------------------------------------


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_value(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, (float, np.floating)) and not math.isfinite(float(value)):
        return "null"
    if isinstance(value, (int, float, np.integer, np.floating, bool, np.bool_)):
        return _fmt(value)
    return json.dumps(str(value), ensure_ascii=False)


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (str, int, float, np.integer, np.floating, np.bool_))


def _as_mapping(row: Any) -> Mapping[str, Any]:
    if isinstance(row, Mapping):
        return row
    if dataclasses.is_dataclass(row):
        return {f.name: getattr(row, f.name) for f in dataclasses.fields(row)}
    if hasattr(row, "_asdict"):
        return row._asdict()
    raise TypeError(f"cannot tabulate row of type {type(row).__name__}")


def write_table(
    rows: Sequence[Any],
    fmt: str = "csv",
    sink: IO[bytes] | None = None,
    columns: Sequence[str] | None = None,
    comment: str | None = None,
) -> bytes:
    """Serialize homogeneous rows (mappings, dataclasses or namedtuples).

    Columns default to the scalar fields of the first row, in field order;
    non-scalar fields (e.g. per-scale fluctuation lists) are skipped. For CSV
    an optional ``comment`` is written as a leading ``# ...`` line. The
    encoded bytes are returned and, if given, written to ``sink``.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown table format {fmt!r}")
    mapped = [_as_mapping(r) for r in rows]
    if columns is None:
        if not mapped:
            raise ValueError("columns must be given for an empty table")
        columns = [k for k, v in mapped[0].items() if _is_scalar(v)]
    columns = list(columns)
    for i, r in enumerate(mapped):
        missing = [c for c in columns if c not in r]
        if missing:
            raise ValueError(f"row {i} lacks columns {missing}")

    if fmt == "csv":
        buf = io.StringIO()
        if comment is not None:
            for line in comment.splitlines() or [""]:
                buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(columns)
        for r in mapped:
            writer.writerow([_fmt(r[c]) for c in columns])
        text = buf.getvalue()
    else:
        records = [
            "{" + ", ".join(f"{json.dumps(c)}: {_json_value(r[c])}" for c in columns) + "}"
            for r in mapped
        ]
        text = "[" + ",\n ".join(records) + "]\n"

    data = text.encode("utf-8")
    if sink is not None:
        sink.write(data)
    return data


def read_table(source: IO[bytes] | bytes) -> list[dict[str, str]]:
    """Read a CSV table written by write_table, skipping ``#`` comment lines."""
    text = _read_text(source)
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def read_values(source: IO[bytes] | bytes) -> np.ndarray:
    """Read a single-column numeric file (optional non-numeric header line)."""
    text = _read_text(source)
    values: list[float] = []
    first = True
    for line_no, raw in enumerate(text.splitlines(), start=1):
        token = raw.strip()
        if not token or token.startswith("#"):
            continue
        if first:
            first = False
            try:
                float(token)
            except ValueError:
                continue  # header
        values.append(_real(token, line_no, "value"))
    if not values:
        raise EmptyInputError("no numeric values found; is this the right file?")
    return np.array(values)
