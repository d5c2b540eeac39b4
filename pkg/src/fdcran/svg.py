"""Standalone, byte-deterministic SVG line charts from sweep tables.

Hand-rolled on purpose: the output for a given table must be reproducible to
the byte, so no plotting library (with its ids and timestamps) is involved.
One polyline per scheme, circle markers at the data points, fixed palette.
"""

import math
from dataclasses import dataclass

from .model import SchemeId
from .sweep import SweepRow

__all__ = ["PlotSpec", "emit_svg"]

# one fixed color per scheme, keyed by enum order
_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")

_MARGIN_LEFT = 62.0
_MARGIN_RIGHT = 16.0
_MARGIN_TOP = 28.0
_MARGIN_BOTTOM = 46.0


@dataclass(frozen=True)
class PlotSpec:
    """Chart framing; label defaults are filled from the table."""

    title: str = "equal per-cell rate"
    x_label: str | None = None
    y_label: str = "r_eq [bits/s/Hz]"
    width: int = 640
    height: int = 440


def _nice_step(span: float, target: int = 6) -> float:
    raw = span / max(target, 1)
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * magnitude:
            return mult * magnitude
    return 10.0 * magnitude


def _ticks(lo: float, hi: float) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _num(x: float) -> str:
    return f"{x:.2f}"


def _label(x: float) -> str:
    return f"{x:g}"


def emit_svg(rows: list[SweepRow], path, plot_spec: PlotSpec | None = None) -> None:
    """Render r_eq versus the sweep value, one polyline per scheme."""
    if not rows:
        raise ValueError("cannot plot an empty table")
    spec = plot_spec if plot_spec is not None else PlotSpec()
    x_label = spec.x_label if spec.x_label is not None else rows[0].sweep_var

    series = []  # (scheme, [(x, y), ...]) in enum order
    for scheme in SchemeId:
        points = [(row.value, row.r_eq) for row in rows if row.scheme is scheme]
        if points:
            series.append((scheme, points))

    xs = [row.value for row in rows]
    ys = [row.r_eq for row in rows]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi <= x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    y_lo = 0.0
    y_hi = max(max(ys), 1e-9) * 1.05

    plot_w = spec.width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = spec.height - _MARGIN_TOP - _MARGIN_BOTTOM

    def to_x(v: float) -> float:
        return _MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def to_y(v: float) -> float:
        return _MARGIN_TOP + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
        f'<text x="{_num(spec.width / 2)}" y="18" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">{spec.title}</text>',
    ]

    # axes, grid and ticks
    x0, y0 = _MARGIN_LEFT, _MARGIN_TOP + plot_h
    x1, y1 = _MARGIN_LEFT + plot_w, _MARGIN_TOP
    for t in _ticks(x_lo, x_hi):
        px = to_x(t)
        parts.append(
            f'<line x1="{_num(px)}" y1="{_num(y0)}" x2="{_num(px)}" y2="{_num(y1)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_num(px)}" y="{_num(y0 + 16)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{_label(t)}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        py = to_y(t)
        parts.append(
            f'<line x1="{_num(x0)}" y1="{_num(py)}" x2="{_num(x1)}" y2="{_num(py)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_num(x0 - 6)}" y="{_num(py + 4)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{_label(t)}</text>'
        )
    parts.append(
        f'<rect x="{_num(x0)}" y="{_num(y1)}" width="{_num(plot_w)}" '
        f'height="{_num(plot_h)}" fill="none" stroke="#333333" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{_num(x0 + plot_w / 2)}" y="{_num(spec.height - 10)}" '
        f'font-family="sans-serif" font-size="12" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{_num(y1 + plot_h / 2)}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {_num(y1 + plot_h / 2)})">{spec.y_label}</text>'
    )

    # data series
    scheme_index = {scheme: i for i, scheme in enumerate(SchemeId)}
    for scheme, points in series:
        color = _PALETTE[scheme_index[scheme] % len(_PALETTE)]
        coords = [(to_x(x), to_y(y)) for x, y in points]
        if len(coords) >= 2:
            joined = " ".join(f"{_num(px)},{_num(py)}" for px, py in coords)
            parts.append(
                f'<polyline points="{joined}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"/>'
            )
        for px, py in coords:
            parts.append(
                f'<circle cx="{_num(px)}" cy="{_num(py)}" r="2.5" fill="{color}"/>'
            )

    # legend, top-left inside the plot area
    for i, (scheme, _) in enumerate(series):
        color = _PALETTE[scheme_index[scheme] % len(_PALETTE)]
        ly = y1 + 14 + 16 * i
        parts.append(
            f'<line x1="{_num(x0 + 10)}" y1="{_num(ly)}" x2="{_num(x0 + 34)}" '
            f'y2="{_num(ly)}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_num(x0 + 40)}" y="{_num(ly + 4)}" font-family="sans-serif" '
            f'font-size="11">{scheme.value}</text>'
        )

    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
