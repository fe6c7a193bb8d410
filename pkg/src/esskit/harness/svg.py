"""Minimal deterministic SVG line plots.

Self-contained output with no external references; byte-identical for
identical input, which makes the figures snapshot-testable.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

from esskit.errors import ParameterError

WIDTH, HEIGHT = 640, 420
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 24, 44, 52
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def _column_index(header: Sequence[str], col: int | str) -> int:
    if isinstance(col, int):
        if not 0 <= col < len(header):
            raise ParameterError(f"column index {col} outside header of {len(header)} columns")
        return col
    try:
        return list(header).index(col)
    except ValueError:
        raise ParameterError(f"no column named {col!r} in header {list(header)}") from None


def _to_plot_scale(values: list[float], log: bool, axis: str) -> list[float]:
    if not log:
        return values
    if any(v <= 0 for v in values):
        raise ParameterError(f"log scale on {axis} axis requires positive values")
    return [math.log10(v) for v in values]


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def emit_svg_lineplot(
    path: str | Path,
    header: Sequence[str],
    rows: Sequence[Sequence],
    x_col: int | str,
    y_cols: Sequence[int | str],
    log_x: bool = False,
    log_y: bool = False,
    title: str = "",
    x_label: str | None = None,
    y_label: str | None = None,
) -> Path:
    """Render one polyline per y column against the x column."""
    if not rows:
        raise ParameterError("cannot plot an empty table")
    if not y_cols:
        raise ParameterError("at least one y column is required")
    xi = _column_index(header, x_col)
    yis = [_column_index(header, c) for c in y_cols]

    xs = _to_plot_scale([float(row[xi]) for row in rows], log_x, "x")
    series = [_to_plot_scale([float(row[yi]) for row in rows], log_y, "y") for yi in yis]

    x_lo, x_hi = min(xs), max(xs)
    y_lo = min(min(s) for s in series)
    y_hi = max(max(s) for s in series)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        return MARGIN_TOP + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h

    def tick_label(v: float, log: bool) -> str:
        return f"{10 ** v:.3g}" if log else f"{v:.4g}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>'
        )

    axis_y = MARGIN_TOP + plot_h
    parts.append(
        f'<line x1="{MARGIN_LEFT}" y1="{axis_y}" x2="{MARGIN_LEFT + plot_w}" y2="{axis_y}" '
        'stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{axis_y}" '
        'stroke="black" stroke-width="1"/>'
    )
    for tx in _ticks(x_lo, x_hi):
        x = px(tx)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{axis_y}" x2="{_fmt(x)}" y2="{axis_y + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{axis_y + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{tick_label(tx, log_x)}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        y = py(ty)
        parts.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{_fmt(y)}" x2="{MARGIN_LEFT}" y2="{_fmt(y)}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick_label(ty, log_y)}</text>'
        )
    if x_label or x_col:
        parts.append(
            f'<text x="{MARGIN_LEFT + plot_w / 2:.0f}" y="{HEIGHT - 12}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{x_label or header[xi]}</text>'
        )
    if y_label:
        parts.append(
            f'<text x="16" y="{MARGIN_TOP + plot_h / 2:.0f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.0f})">{y_label}</text>'
        )

    order = sorted(range(len(xs)), key=lambda i: (xs[i], i))
    for si, (yi, ys) in enumerate(zip(yis, series)):
        color = PALETTE[si % len(PALETTE)]
        points = " ".join(f"{_fmt(px(xs[i]))},{_fmt(py(ys[i]))}" for i in order)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
        lx = MARGIN_LEFT + plot_w - 130
        ly = MARGIN_TOP + 8 + 16 * si
        parts.append(f'<rect x="{lx}" y="{ly - 8}" width="10" height="10" fill="{color}"/>')
        parts.append(
            f'<text x="{lx + 14}" y="{ly + 1}" font-family="sans-serif" '
            f'font-size="11">{header[yi]}</text>'
        )

    parts.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes("\n".join(parts).encode("utf-8") + b"\n")
    return path
