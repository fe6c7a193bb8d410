"""CSV ingestion and emission.

Input: one numeric column per series, optional single header row
(auto-detected when the first row is non-numeric), comma or whitespace
delimited. Output: comma-delimited with a header row and floats printed
at 17 significant digits so every value round-trips exactly.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from esskit.errors import ParseError
from esskit.series import TimeSeries

FLOAT_FORMAT = "{:.17g}"


def format_value(value) -> str:
    if isinstance(value, float):
        return FLOAT_FORMAT.format(value)
    return str(value)


def _split_row(line: str) -> list[str]:
    if "," in line:
        return [field.strip() for field in line.split(",")]
    return line.split()


def _is_numeric(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_series_csv(
    path: str | Path,
    column: int | str | None = None,
    dt: float = 1.0,
    label: str | None = None,
) -> TimeSeries:
    """Read one column of a delimited text file into a `TimeSeries`.

    ``column`` selects by header name or 0-based index (default: first
    column). Parse failures report the 1-based file row.
    """
    path = Path(path)
    rows: list[tuple[int, list[str]]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if line:
                rows.append((lineno, _split_row(line)))
    if not rows:
        raise ParseError(f"{path}: file contains no data")

    header: list[str] | None = None
    if not all(_is_numeric(token) for token in rows[0][1]):
        header = rows[0][1]
        rows = rows[1:]
        if not rows:
            raise ParseError(f"{path}: file contains a header but no data rows")

    if column is None:
        index = 0
    elif isinstance(column, int):
        index = column
    else:
        if header is None:
            raise ParseError(f"{path}: column {column!r} requested but the file has no header")
        try:
            index = header.index(column)
        except ValueError:
            raise ParseError(f"{path}: no column named {column!r} in header {header}") from None

    values: list[float] = []
    for lineno, fields in rows:
        if index >= len(fields):
            raise ParseError(f"{path}: row {lineno}: no column {index} in {len(fields)} fields")
        token = fields[index]
        try:
            value = float(token)
        except ValueError:
            raise ParseError(f"{path}: row {lineno}: could not parse {token!r}") from None
        if value != value or value in (float("inf"), float("-inf")):
            raise ParseError(f"{path}: row {lineno}: non-finite value {token!r}")
        values.append(value)
    return TimeSeries(values, dt=dt, label=label or path.stem)


def write_series_csv(path: str | Path, ts: TimeSeries, column_name: str = "value") -> None:
    """Write a series as a one-column CSV with a header row."""
    write_csv(path, [column_name], ([v] for v in ts.values.tolist()))


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a table with RFC-4180-style quoting and exact float formatting."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    """Read back a table written by `write_csv` (header, string rows)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: file contains no data") from None
        return header, [row for row in reader if row]
