"""Minimal deterministic SVG line charts.

Hand-rolled emitter with no plotting dependency: fixed canvas, fixed
palette, and fixed numeric formatting, so a chart is a pure function of
the plotted values and regenerating it from the same CSV reproduces the
bytes exactly.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

__all__ = ["line_chart"]

_WIDTH = 640.0
_HEIGHT = 420.0
_ML, _MR, _MT, _MB = 72.0, 24.0, 42.0, 54.0
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
_ASYMPTOTE_COLOR = "#777777"


def _nice_step(span: float, target: int) -> float:
    raw = span / max(target, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mult * mag >= raw:
            return mult * mag
    return 10.0 * mag


def _ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    step = _nice_step(hi - lo, target)
    k0 = math.ceil(lo / step - 1e-9)
    k1 = math.floor(hi / step + 1e-9)
    return [k * step for k in range(k0, k1 + 1)]


def _expand(lo: float, hi: float) -> tuple[float, float]:
    if hi <= lo:
        pad = 1.0 if lo == 0.0 else 0.5 * abs(lo)
        return lo - pad, lo + pad
    pad = 0.04 * (hi - lo)
    return lo - pad, hi + pad


def line_chart(series, *, title: str, x_label: str, y_label: str,
               asymptotes=()) -> str:
    """Render (label, xs, ys) series as an SVG document string.

    asymptotes is a sequence of (label, y) horizontal dashed guides.
    """
    series = [(str(label), [float(v) for v in xs], [float(v) for v in ys])
              for label, xs, ys in series]
    if not series or any(len(xs) == 0 or len(xs) != len(ys) for _, xs, ys in series):
        raise ValueError("each series needs equally many x and y values, at least one")
    guides = [(str(label), float(y)) for label, y in asymptotes]

    xlo = min(min(xs) for _, xs, _ in series)
    xhi = max(max(xs) for _, xs, _ in series)
    ylo = min(min(ys) for _, _, ys in series)
    yhi = max(max(ys) for _, _, ys in series)
    for _, y in guides:
        ylo = min(ylo, y)
        yhi = max(yhi, y)
    xlo, xhi = _expand(xlo, xhi)
    ylo, yhi = _expand(ylo, yhi)

    x0, x1 = _ML, _WIDTH - _MR
    y0, y1 = _HEIGHT - _MB, _MT

    def px(x: float) -> str:
        return f"{x0 + (x - xlo) / (xhi - xlo) * (x1 - x0):.2f}"

    def py(y: float) -> str:
        return f"{y0 + (y - ylo) / (yhi - ylo) * (y1 - y0):.2f}"

    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" '
               f'height="{_HEIGHT:.0f}" viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}">')
    out.append(f'<rect x="0" y="0" width="{_WIDTH:.0f}" height="{_HEIGHT:.0f}" '
               'fill="#ffffff"/>')
    out.append(f'<text x="{_WIDTH / 2:.2f}" y="24" font-family="sans-serif" '
               f'font-size="15" text-anchor="middle">{escape(title)}</text>')

    for t in _ticks(xlo, xhi):
        out.append(f'<line x1="{px(t)}" y1="{y0:.2f}" x2="{px(t)}" y2="{y1:.2f}" '
                   'stroke="#e0e0e0" stroke-width="1"/>')
        out.append(f'<text x="{px(t)}" y="{y0 + 18:.2f}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="middle">{t:g}</text>')
    for t in _ticks(ylo, yhi):
        out.append(f'<line x1="{x0:.2f}" y1="{py(t)}" x2="{x1:.2f}" y2="{py(t)}" '
                   'stroke="#e0e0e0" stroke-width="1"/>')
        out.append(f'<text x="{x0 - 6:.2f}" y="{py(t)}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="end" dominant-baseline="middle">'
                   f'{t:g}</text>')

    out.append(f'<rect x="{x0:.2f}" y="{y1:.2f}" width="{x1 - x0:.2f}" '
               f'height="{y0 - y1:.2f}" fill="none" stroke="#333333" '
               'stroke-width="1"/>')
    out.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{_HEIGHT - 14:.2f}" '
               'font-family="sans-serif" font-size="12" text-anchor="middle">'
               f'{escape(x_label)}</text>')
    out.append(f'<text x="18" y="{(y0 + y1) / 2:.2f}" font-family="sans-serif" '
               'font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">'
               f'{escape(y_label)}</text>')

    for label, y in guides:
        out.append(f'<line x1="{x0:.2f}" y1="{py(y)}" x2="{x1:.2f}" y2="{py(y)}" '
                   f'stroke="{_ASYMPTOTE_COLOR}" stroke-width="1" '
                   'stroke-dasharray="6,4"/>')
        out.append(f'<text x="{x1 - 4:.2f}" y="{float(py(y)) - 4:.2f}" '
                   'font-family="sans-serif" font-size="10" text-anchor="end" '
                   f'fill="{_ASYMPTOTE_COLOR}">{escape(label)}</text>')

    for i, (_, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{px(x)},{py(y)}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   'stroke-width="1.8"/>')

    legend_x = x0 + 12.0
    legend_y = y1 + 12.0
    for i, (label, _, _) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        row_y = legend_y + 16.0 * i
        out.append(f'<line x1="{legend_x:.2f}" y1="{row_y:.2f}" '
                   f'x2="{legend_x + 22:.2f}" y2="{row_y:.2f}" '
                   f'stroke="{color}" stroke-width="1.8"/>')
        out.append(f'<text x="{legend_x + 28:.2f}" y="{row_y + 4:.2f}" '
                   'font-family="sans-serif" font-size="11">'
                   f'{escape(label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
