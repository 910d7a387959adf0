"""Tabular dataset type, CSV round-tripping, the built-in sample data, and
scatter-series extraction for plotting.

Columns are named; ``NOL`` and ``LOC`` alias each other everywhere a column
is looked up, since both names are in circulation for the same measure.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .errors import (
    MalformedRowError, NonNumericError, NonPositiveValueError,
    UnknownColumnError,
)

# Symmetric alias table: a lookup for either name finds a column named the other.
COLUMN_ALIASES = {"LOC": "NOL", "NOL": "LOC"}


@dataclass(frozen=True)
class Dataset:
    """Immutable numeric table: named columns, rows of floats, provenance tag."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    provenance: str = "unspecified"

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows",
                           tuple(tuple(float(v) for v in row) for row in self.rows))
        if len(set(self.columns)) != len(self.columns):
            raise ValueError(f"duplicate column names: {self.columns!r}")
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(
                    f"row {i} has {len(row)} values, expected {width}")
            for name, v in zip(self.columns, row):
                if not math.isfinite(v):
                    raise ValueError(f"non-finite value {v!r} in column {name!r}")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def resolve(self, name: str) -> str:
        """Map a requested column name to the stored one, honoring aliases."""
        if name in self.columns:
            return name
        alias = COLUMN_ALIASES.get(name)
        if alias is not None and alias in self.columns:
            return alias
        raise UnknownColumnError(name)

    def column(self, name: str) -> tuple[float, ...]:
        idx = self.columns.index(self.resolve(name))
        return tuple(row[idx] for row in self.rows)


# 33 samples of (NOL, NOC, NOM, NOA): source lines, classes, methods,
# attributes per system.  Values are fixed; the column sums below guard
# against accidental edits.
_TABLE1_ROWS = (
    (15837, 65, 1446, 537),
    (23570, 57, 1535, 876),
    (47106, 91, 2141, 1178),
    (23154, 51, 1420, 538),
    (20747, 154, 2814, 1113),
    (44930, 92, 2224, 1132),
    (28582, 71, 1978, 839),
    (19254, 69, 1815, 675),
    (20085, 74, 1876, 700),
    (57086, 140, 322, 81),
    (92231, 201, 481, 124),
    (167541, 355, 735, 204),
    (261260, 562, 1193, 297),
    (838128, 1966, 3227, 611),
    (2062982, 5107, 6735, 2297),
    (2129555, 5035, 7292, 2294),
    (1948354, 4566, 5975, 2095),
    (64492, 222, 210, 81),
    (70514, 243, 229, 88),
    (113919, 349, 325, 132),
    (177356, 565, 516, 185),
    (6593, 324, 1310, 60),
    (1023, 25, 103, 220),
    (1729, 20, 134, 185),
    (50000, 46, 2025, 510),
    (300000, 1000, 11000, 10960),
    (500000, 1617, 37191, 17141),
    (9189, 339, 1993, 4022),
    (7102, 45, 711, 482),
    (830, 10, 175, 89),
    (1602, 26, 180, 247),
    (3451, 18, 170, 145),
    (549, 15, 33, 172),
)

TABLE1_COLUMN_SUMS = {"NOL": 9108751, "NOC": 23520, "NOM": 99514, "NOA": 50310}


def builtin_table1() -> Dataset:
    """The embedded 33-system sample with columns NOL, NOC, NOM, NOA."""
    return Dataset(columns=("NOL", "NOC", "NOM", "NOA"),
                   rows=_TABLE1_ROWS, provenance="paper-table-1")


def read_csv(source: Iterable[str], provenance: str = "csv") -> Dataset:
    """Parse header + numeric rows into a Dataset.

    Line numbers in errors are 1-based over the input lines.  A header-only
    input yields a valid 0-row dataset.
    """
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRowError(1, "input is empty, expected a header line") from None
    columns = tuple(name.strip() for name in header)
    if any(not c for c in columns):
        raise MalformedRowError(1, "header contains an empty column name")
    rows: list[tuple[float, ...]] = []
    for fields in reader:
        line = reader.line_num
        if not fields:
            continue
        if len(fields) != len(columns):
            raise MalformedRowError(
                line, f"expected {len(columns)} fields, got {len(fields)}")
        values = []
        for name, text in zip(columns, fields):
            try:
                v = float(text)
            except ValueError:
                raise NonNumericError(line, name, text) from None
            if not math.isfinite(v):
                raise NonNumericError(line, name, text)
            values.append(v)
        rows.append(tuple(values))
    return Dataset(columns=columns, rows=tuple(rows), provenance=provenance)


def _render_value(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def write_csv(data: Dataset, sink: TextIO) -> None:
    """Emit the dataset as CSV; read_csv(write_csv(d)) reproduces d.

    Integral values are written without a decimal point; others with repr,
    which round-trips floats exactly.
    """
    sink.write(",".join(data.columns) + "\n")
    for row in data.rows:
        sink.write(",".join(_render_value(v) for v in row) + "\n")


@dataclass(frozen=True)
class ScatterSeries:
    """Point set for one y column against a shared x column."""

    x_name: str
    y_name: str
    points: tuple[tuple[float, float], ...]
    log10: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))


def scatter(data: Dataset, x: str, ys: Sequence[str],
            log10: bool = False) -> list[ScatterSeries]:
    """One series per y column; log10 transforms both coordinates.

    Row order and count carry through unchanged.  Under log10, any value
    <= 0 in a requested column is an error naming its row and column.
    """
    x_col = data.resolve(x)
    y_cols = [data.resolve(y) for y in ys]
    xs = data.column(x_col)
    series: list[ScatterSeries] = []
    for requested, resolved in zip(ys, y_cols):
        y_vals = data.column(resolved)
        pts = []
        for i, (xv, yv) in enumerate(zip(xs, y_vals)):
            if log10:
                if xv <= 0:
                    raise NonPositiveValueError(i, x_col, xv)
                if yv <= 0:
                    raise NonPositiveValueError(i, resolved, yv)
                pts.append((math.log10(xv), math.log10(yv)))
            else:
                pts.append((xv, yv))
        series.append(ScatterSeries(
            x_name=x_col, y_name=resolved, points=tuple(pts), log10=log10))
    return series


def svg_scatter(series: ScatterSeries) -> str:
    """Render one series as a standalone 640x480 SVG with labeled axes.

    Layout is presentation plumbing: fixed margins, 3px points, min/max
    data bounds padded 5%.  Output is deterministic for a given series.
    """
    width, height = 640, 480
    margin = 50
    xs = [p[0] for p in series.points] or [0.0]
    ys = [p[1] for p in series.points] or [0.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_pad = (x_hi - x_lo) * 0.05 or 1.0
    y_pad = (y_hi - y_lo) * 0.05 or 1.0
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def sx(v: float) -> float:
        return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(v: float) -> float:
        return height - margin - (v - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    x_label = series.x_name + (" (log10)" if series.log10 else "")
    y_label = series.y_name + (" (log10)" if series.log10 else "")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{x_label}</text>',
        f'<text x="16" y="{height // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 16 {height // 2})">{y_label}</text>',
    ]
    for px, py in series.points:
        parts.append(f'<circle cx="{sx(px):.2f}" cy="{sy(py):.2f}" r="3" '
                     f'fill="steelblue"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
