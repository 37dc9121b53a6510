"""Price series container, CSV ingestion, descriptive statistics and gap audit."""
from __future__ import annotations

import csv
import datetime as dt
import io
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "TimeSeries",
    "SummaryStats",
    "IngestReport",
    "InputError",
    "load_csv",
    "read_csv_text",
    "write_csv",
    "summarize",
    "detect_gaps",
    "DEFAULT_MAX_GAP_DAYS",
]

DEFAULT_MAX_GAP_DAYS = 4


class InputError(ValueError):
    """Invalid user input: unreadable file, missing column, too few rows."""


@dataclass(frozen=True)
class TimeSeries:
    """Ordered, finite observations with optional strictly increasing dates.

    The values array is stored read-only so a series can be shared between
    tests without defensive copies.
    """

    values: np.ndarray
    dates: tuple[dt.date, ...] | None = None
    label: str = ""

    def __post_init__(self):
        vals = np.array(self.values, dtype=float).ravel()
        if vals.size < 1:
            raise InputError("a time series needs at least one observation")
        if not np.all(np.isfinite(vals)):
            bad = int(np.flatnonzero(~np.isfinite(vals))[0])
            raise InputError(f"non-finite value at index {bad}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.dates is not None:
            dates = tuple(self.dates)
            if len(dates) != vals.size:
                raise InputError(f"{len(dates)} dates for {vals.size} values")
            for i in range(1, len(dates)):
                if dates[i] <= dates[i - 1]:
                    raise InputError(f"dates not strictly increasing at index {i} ({dates[i]})")
            object.__setattr__(self, "dates", dates)

    def __len__(self) -> int:
        return int(self.values.size)

    def slice(self, start: int, stop: int) -> "TimeSeries":
        dates = None if self.dates is None else self.dates[start:stop]
        return TimeSeries(self.values[start:stop], dates, self.label)

    def diff(self) -> "TimeSeries":
        """First differences; dates are those of the later observation."""
        dates = None if self.dates is None else self.dates[1:]
        return TimeSeries(np.diff(self.values), dates, f"diff({self.label})" if self.label else "diff")


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean: float
    median: float
    std_dev: float
    skewness: float | None  # None for constant data
    kurtosis: float | None
    max: float
    min: float


@dataclass
class IngestReport:
    rows_read: int = 0
    rows_dropped: int = 0
    gap_count: int = 0
    gap_spans: list[tuple[str, str]] = field(default_factory=list)
    gap_audit_skipped: bool = False
    max_gap_days: int = DEFAULT_MAX_GAP_DAYS


def _parse_number(cell: str) -> float | None:
    s = cell.strip().replace(",", "")
    if not s:
        return None
    try:
        v = float(s)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _parse_date(cell: str) -> dt.date:
    s = cell.strip()
    try:
        return dt.date.fromisoformat(s[:10])
    except ValueError:
        pass
    try:
        return dt.datetime.strptime(s, "%d.%m.%Y").date()
    except ValueError:
        raise InputError(f"unparseable date {cell!r} (expected ISO-8601 or DD.MM.YYYY)") from None


def read_csv_text(text: str | Iterable[str], column: str, date_column: str | None = None,
                  label: str = "") -> tuple[TimeSeries, IngestReport]:
    """Parse CSV content already in memory, including the gap audit. See :func:`load_csv`."""
    lines = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(lines)
    try:
        header = [h.strip().lstrip("\ufeff") for h in next(reader)]
    except StopIteration:
        raise InputError("empty CSV: header row required") from None
    if column not in header:
        raise InputError(f"column {column!r} not found in header {header}")
    col = header.index(column)
    dcol = None
    if date_column is not None:
        if date_column not in header:
            raise InputError(f"date column {date_column!r} not found in header {header}")
        dcol = header.index(date_column)

    values: list[float] = []
    dates: list[dt.date] = []
    rows_read = 0
    dropped = 0
    for row in reader:
        rows_read += 1
        v = _parse_number(row[col]) if col < len(row) else None
        if v is None:
            dropped += 1
            continue
        values.append(v)
        if dcol is not None:
            dates.append(_parse_date(row[dcol]))
    if not values:
        raise InputError(f"no parseable rows in column {column!r}")
    ts = TimeSeries(np.asarray(values), tuple(dates) if dcol is not None else None, label or column)
    report = IngestReport(rows_read=rows_read, rows_dropped=dropped)
    if ts.dates is None:
        report.gap_audit_skipped = True
    else:
        gaps = detect_gaps(ts)
        report.gap_count, report.gap_spans = gaps.gap_count, gaps.gap_spans
    return ts, report


def load_csv(path: str | Path, column: str, date_column: str | None = None) -> tuple[TimeSeries, IngestReport]:
    """Load one numeric column of a UTF-8, comma-separated file with a header row.

    Rows whose target cell is empty or unparseable are dropped and counted;
    thousands separators are stripped. ``"-"`` reads standard input.
    When ``date_column`` is given, the gap audit is filled in as well.
    """
    if str(path) == "-":
        return read_csv_text(sys.stdin.read(), column, date_column, label="stdin")
    p = Path(path)
    if not p.is_file():
        raise InputError(f"file not found: {p}")
    with p.open(newline="", encoding="utf-8") as fh:
        return read_csv_text(fh, column, date_column, label=p.stem)


def write_csv(ts: TimeSeries, out, column: str = "value", date_column: str = "date") -> None:
    """Write a series in the layout :func:`load_csv` reads (values via ``repr``, so exact)."""
    w = csv.writer(out, lineterminator="\n")
    if ts.dates is not None:
        w.writerow([date_column, column])
        for d, v in zip(ts.dates, ts.values):
            w.writerow([d.isoformat(), repr(float(v))])
    else:
        w.writerow([column])
        for v in ts.values:
            w.writerow([repr(float(v))])


def summarize(ts: TimeSeries | Sequence[float]) -> SummaryStats:
    """Moment-based descriptive statistics.

    ``std_dev`` uses the n-1 divisor; skewness is m3/m2**1.5 and kurtosis the
    raw Pearson m4/m2**2 (3 for a normal), both from biased central moments.
    """
    x = ts.values if isinstance(ts, TimeSeries) else np.asarray(ts, dtype=float)
    n = x.size
    if n < 2:
        raise InputError("summary statistics need at least 2 observations")
    mean = float(np.mean(x))
    d = x - mean
    m2 = float(np.mean(d * d))
    m3 = float(np.mean(d ** 3))
    m4 = float(np.mean(d ** 4))
    if m2 > 0:
        skew = m3 / m2 ** 1.5
        kurt = m4 / m2 ** 2
    else:
        skew = kurt = None
    return SummaryStats(
        n=n,
        mean=mean,
        median=float(np.median(x)),
        std_dev=math.sqrt(m2 * n / (n - 1)),
        skewness=skew,
        kurtosis=kurt,
        max=float(np.max(x)),
        min=float(np.min(x)),
    )


def detect_gaps(ts: TimeSeries, max_gap_days: int = DEFAULT_MAX_GAP_DAYS) -> IngestReport:
    """Report consecutive-date jumps longer than ``max_gap_days``.

    Gaps are reported only, never imputed. Without dates the audit is skipped
    and the returned report says so.
    """
    if max_gap_days < 1:
        raise ValueError("max_gap_days must be at least 1")
    rep = IngestReport(rows_read=len(ts), max_gap_days=max_gap_days)
    if ts.dates is None:
        rep.gap_audit_skipped = True
        return rep
    for a, b in zip(ts.dates, ts.dates[1:]):
        if (b - a).days > max_gap_days:
            rep.gap_spans.append((a.isoformat(), b.isoformat()))
    rep.gap_count = len(rep.gap_spans)
    return rep
