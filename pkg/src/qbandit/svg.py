"""Minimal static SVG plotting: bar and line charts, no dependencies.

Charts are plain SVG documents assembled from strings; ``panel_grid``
nests complete documents into a rows-by-columns figure.  Only the
primitives the experiment reports need are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PALETTE = ("#4878cf", "#ee854a", "#6acc65", "#d65f5f", "#956cb4")

_FONT = 'font-family="Helvetica,Arial,sans-serif"'


def _fmt(v: float) -> str:
    return f"{v:g}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(count - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        if mag * mult >= raw:
            step = mag * mult
            break
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(t) < 1e-15 else t)
        t += step
    return ticks


def _log_ticks(lo: float, hi: float) -> list[float]:
    lo_exp = math.floor(math.log10(lo))
    hi_exp = math.ceil(math.log10(hi))
    return [10.0**e for e in range(lo_exp, hi_exp + 1)]


@dataclass
class _Axes:
    """Maps data coordinates onto a pixel viewport and draws the frame."""

    width: int
    height: int
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    log_x: bool = False
    log_y: bool = False
    margin_left: int = 58
    margin_bottom: int = 42
    margin_top: int = 28
    margin_right: int = 14

    def x_px(self, x: float) -> float:
        lo, hi = self.x_lo, self.x_hi
        if self.log_x:
            x, lo, hi = math.log10(x), math.log10(lo), math.log10(hi)
        frac = (x - lo) / (hi - lo) if hi > lo else 0.5
        return self.margin_left + frac * (self.width - self.margin_left - self.margin_right)

    def y_px(self, y: float) -> float:
        lo, hi = self.y_lo, self.y_hi
        if self.log_y:
            y, lo, hi = math.log10(y), math.log10(lo), math.log10(hi)
        frac = (y - lo) / (hi - lo) if hi > lo else 0.5
        return self.height - self.margin_bottom - frac * (
            self.height - self.margin_top - self.margin_bottom
        )

    def frame(self, title: str, xlabel: str, ylabel: str) -> list[str]:
        x0, y0 = self.margin_left, self.height - self.margin_bottom
        x1, y1 = self.width - self.margin_right, self.margin_top
        parts = [
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="white"/>',
            f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
            f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
            f'<text x="{(x0 + x1) / 2:.1f}" y="16" text-anchor="middle" {_FONT} font-size="12">{title}</text>',
            f'<text x="{(x0 + x1) / 2:.1f}" y="{self.height - 6}" text-anchor="middle" {_FONT} font-size="11">{xlabel}</text>',
            f'<text x="14" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" {_FONT} font-size="11" transform="rotate(-90 14 {(y0 + y1) / 2:.1f})">{ylabel}</text>',
        ]
        xticks = (
            _log_ticks(self.x_lo, self.x_hi) if self.log_x else _ticks(self.x_lo, self.x_hi)
        )
        for t in xticks:
            if not self.x_lo <= t <= self.x_hi:
                continue
            px = self.x_px(t)
            parts.append(f'<line x1="{px:.1f}" y1="{y0}" x2="{px:.1f}" y2="{y0 + 4}" stroke="black"/>')
            parts.append(
                f'<text x="{px:.1f}" y="{y0 + 16}" text-anchor="middle" {_FONT} font-size="10">{_fmt(t)}</text>'
            )
        yticks = (
            _log_ticks(self.y_lo, self.y_hi) if self.log_y else _ticks(self.y_lo, self.y_hi)
        )
        for t in yticks:
            if not self.y_lo <= t <= self.y_hi:
                continue
            py = self.y_px(t)
            parts.append(f'<line x1="{x0 - 4}" y1="{py:.1f}" x2="{x0}" y2="{py:.1f}" stroke="black"/>')
            parts.append(
                f'<text x="{x0 - 6}" y="{py + 3:.1f}" text-anchor="end" {_FONT} font-size="10">{_fmt(t)}</text>'
            )
        return parts


def _document(width: int, height: int, parts: list[str]) -> str:
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n{body}\n</svg>\n'
    )


def bar_chart(
    series: list[tuple[str, list[tuple[float, float]]]],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    width: int = 420,
    height: int = 300,
    x_range: tuple[float, float] | None = None,
    bar_half_width: float | None = None,
    overlay: list[tuple[float, float]] | None = None,
    overlay_label: str = "",
) -> str:
    """Grouped vertical bars per series, with an optional marker overlay
    (used for exact distributions on top of empirical counts)."""
    xs = [x for _, pts in series for x, _ in pts]
    tops = [y for _, pts in series for _, y in pts]
    if overlay:
        tops += [y for _, y in overlay]
    x_lo, x_hi = x_range if x_range else (min(xs), max(xs))
    pad = 0.05 * (x_hi - x_lo or 1.0)
    axes = _Axes(width, height, x_lo - pad, x_hi + pad, 0.0, max(tops) * 1.12 or 1.0)
    parts = axes.frame(title, xlabel, ylabel)

    if bar_half_width is None:
        distinct = sorted(set(xs))
        gap = min(
            (b - a for a, b in zip(distinct, distinct[1:])),
            default=(x_hi - x_lo) or 1.0,
        )
        bar_half_width = 0.35 * gap
    n_series = len(series)
    slot = 2.0 * bar_half_width / n_series
    y0 = axes.y_px(0.0)
    for s, (label, pts) in enumerate(series):
        color = PALETTE[s % len(PALETTE)]
        for x, top in pts:
            left = axes.x_px(x - bar_half_width + s * slot)
            right = axes.x_px(x - bar_half_width + (s + 1) * slot)
            py = axes.y_px(top)
            parts.append(
                f'<rect x="{left:.1f}" y="{py:.1f}" width="{max(right - left, 1.0):.1f}" '
                f'height="{max(y0 - py, 0.0):.1f}" fill="{color}" fill-opacity="0.85"/>'
            )
        if label:
            parts.append(
                f'<rect x="{width - 120}" y="{34 + 14 * s}" width="10" height="10" fill="{color}"/>'
                f'<text x="{width - 106}" y="{43 + 14 * s}" {_FONT} font-size="10">{label}</text>'
            )
    if overlay:
        for x, y in overlay:
            parts.append(
                f'<circle cx="{axes.x_px(x):.1f}" cy="{axes.y_px(y):.1f}" r="3" '
                f'fill="none" stroke="black" stroke-width="1.2"/>'
            )
        if overlay_label:
            s = len(series)
            parts.append(
                f'<circle cx="{width - 115}" cy="{38 + 14 * s}" r="3" fill="none" stroke="black"/>'
                f'<text x="{width - 106}" y="{42 + 14 * s}" {_FONT} font-size="10">{overlay_label}</text>'
            )
    return _document(width, height, parts)


def line_chart(
    series: list[tuple[str, list[tuple[float, float]]]],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    width: int = 420,
    height: int = 300,
    log_x: bool = False,
    log_y: bool = False,
) -> str:
    """Polyline per series with small point markers."""
    xs = [x for _, pts in series for x, _ in pts]
    ys = [y for _, pts in series for _, y in pts]
    if log_y:
        ys = [y for y in ys if y > 0] or [1.0]
    if log_x:
        xs = [x for x in xs if x > 0] or [1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if not log_x:
        pad = 0.05 * (x_hi - x_lo or 1.0)
        x_lo, x_hi = x_lo - pad, x_hi + pad
    if not log_y:
        pad = 0.08 * (y_hi - y_lo or 1.0)
        y_lo, y_hi = y_lo - pad, y_hi + pad
    axes = _Axes(width, height, x_lo, x_hi, y_lo, y_hi, log_x=log_x, log_y=log_y)
    parts = axes.frame(title, xlabel, ylabel)
    for s, (label, pts) in enumerate(series):
        color = PALETTE[s % len(PALETTE)]
        drawable = [
            (x, y)
            for x, y in pts
            if (not log_x or x > 0) and (not log_y or y > 0)
        ]
        coords = " ".join(f"{axes.x_px(x):.1f},{axes.y_px(y):.1f}" for x, y in drawable)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.6"/>'
        )
        for x, y in drawable:
            parts.append(
                f'<circle cx="{axes.x_px(x):.1f}" cy="{axes.y_px(y):.1f}" r="2.4" fill="{color}"/>'
            )
        if label:
            parts.append(
                f'<line x1="{width - 130}" y1="{38 + 14 * s}" x2="{width - 114}" y2="{38 + 14 * s}" stroke="{color}" stroke-width="2"/>'
                f'<text x="{width - 108}" y="{42 + 14 * s}" {_FONT} font-size="10">{label}</text>'
            )
    return _document(width, height, parts)


def panel_grid(panels: list[list[str]], *, panel_width: int = 420, panel_height: int = 300) -> str:
    """Compose complete SVG documents into a rows-by-columns figure."""
    rows = len(panels)
    cols = max(len(row) for row in panels)
    parts = []
    for r, row in enumerate(panels):
        for c, doc in enumerate(row):
            inner = doc.replace('<svg xmlns="http://www.w3.org/2000/svg" ', "<svg ", 1)
            parts.append(
                f'<svg x="{c * panel_width}" y="{r * panel_height}" '
                + inner.split("<svg ", 1)[1]
            )
    return _document(cols * panel_width, rows * panel_height, parts)
