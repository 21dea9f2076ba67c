"""Small standalone SVG line plots, so reports need no plotting dependency.

Output is deterministic: same data, same bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

__all__ = ["Series", "line_plot"]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_MARGIN_LEFT = 70
_MARGIN_RIGHT = 18
_MARGIN_TOP = 34
_MARGIN_BOTTOM = 52


@dataclass
class Series:
    label: str
    x: list
    y: list
    line: bool = True
    points: bool = False


def _nice_step(span: float, target: int = 5) -> float:
    raw = span / target
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if mult * magnitude >= raw:
            return mult * magnitude
    return 10.0 * magnitude


def _ticks(lo: float, hi: float) -> list[float]:
    step = _nice_step(hi - lo)
    tick = math.ceil(lo / step) * step
    out = []
    while tick <= hi + 1e-9 * step:
        out.append(0.0 if abs(tick) < 1e-9 * step else tick)
        tick += step
    return out


def _bounds(values) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = abs(lo) if lo != 0.0 else 1.0
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def line_plot(
    series: list[Series],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    width: int = 640,
    height: int = 420,
) -> str:
    """Render series as an SVG document string."""
    if not series:
        raise ValueError("line_plot needs at least one series")
    xs = [v for s in series for v in s.x]
    ys = [v for s in series for v in s.y]
    if not xs:
        raise ValueError("line_plot needs at least one data point")
    x0, x1 = _bounds(xs)
    y0, y1 = _bounds(ys)

    plot_w = width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = height - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w

    def py(y: float) -> float:
        return _MARGIN_TOP + (1.0 - (y - y0) / (y1 - y0)) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]

    for tick in _ticks(x0, x1):
        x = px(tick)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MARGIN_TOP}" x2="{x:.2f}" '
            f'y2="{_MARGIN_TOP + plot_h}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_MARGIN_TOP + plot_h + 16}" '
            f'text-anchor="middle" fill="#333333">{tick:.6g}</text>'
        )
    for tick in _ticks(y0, y1):
        y = py(tick)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{y:.2f}" '
            f'x2="{_MARGIN_LEFT + plot_w}" y2="{y:.2f}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 6}" y="{y + 4:.2f}" '
            f'text-anchor="end" fill="#333333">{tick:.6g}</text>'
        )

    parts.append(
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#333333"/>'
    )
    if title:
        parts.append(
            f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" '
            f'font-size="14" fill="#111111">{escape(title)}</text>'
        )
    if xlabel:
        parts.append(
            f'<text x="{_MARGIN_LEFT + plot_w / 2:.0f}" y="{height - 12}" '
            f'text-anchor="middle" fill="#111111">{escape(xlabel)}</text>'
        )
    if ylabel:
        y_mid = _MARGIN_TOP + plot_h / 2
        parts.append(
            f'<text x="16" y="{y_mid:.0f}" text-anchor="middle" fill="#111111" '
            f'transform="rotate(-90 16 {y_mid:.0f})">{escape(ylabel)}</text>'
        )

    for idx, s in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        if s.line and len(s.x) > 1:
            coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(s.x, s.y))
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        if s.points:
            for x, y in zip(s.x, s.y):
                parts.append(
                    f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.5" fill="{color}"/>'
                )

    legend_y = _MARGIN_TOP + 14
    for idx, s in enumerate(series):
        if not s.label:
            continue
        color = PALETTE[idx % len(PALETTE)]
        x_right = _MARGIN_LEFT + plot_w - 8
        parts.append(
            f'<line x1="{x_right - 110}" y1="{legend_y - 4}" x2="{x_right - 90}" '
            f'y2="{legend_y - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{x_right - 84}" y="{legend_y}" fill="#333333">{escape(s.label)}</text>'
        )
        legend_y += 16

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
