"""
Minimal self-contained SVG line plots and heatmaps.

Output is a pure function of the input data, so repeated runs produce
identical files.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from html import escape
from pathlib import Path

import numpy as np

__all__ = ["Curve", "line_plot", "heatmap"]

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 80, 20, 40, 60
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


@dataclass
class Curve:
    x: np.ndarray
    y: np.ndarray
    label: str
    marker: str | None = None  # "circle", "cross" or None
    line: bool = True
    dashed: bool = False


def _fmt(v):
    return f"{v:.2f}"


def _ticks(lo, hi, log):
    if log:
        a, b = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
        return [10.0 ** e for e in range(a, b + 1) if lo <= 10.0 ** e <= hi * (1 + 1e-9)]
    span = hi - lo
    raw = span / 5 if span > 0 else 1.0
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step - 1e-9) * step
    return [start + i * step for i in range(int((hi - start) / step + 1e-9) + 1)]


def _label(v):
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-2:
        return f"{v:.1e}"
    return f"{v:.3g}"


class _Axes:
    def __init__(self, xlim, ylim, xlog, ylog):
        self.xlim, self.ylim, self.xlog, self.ylog = xlim, ylim, xlog, ylog

    def _u(self, v, lim, log):
        if log:
            v, lim = math.log10(v), (math.log10(lim[0]), math.log10(lim[1]))
        return 0.5 if lim[1] == lim[0] else (v - lim[0]) / (lim[1] - lim[0])

    def px(self, x):
        return LEFT + self._u(x, self.xlim, self.xlog) * (WIDTH - LEFT - RIGHT)

    def py(self, y):
        return HEIGHT - BOTTOM - self._u(y, self.ylim, self.ylog) * (HEIGHT - TOP - BOTTOM)


def _limits(values, log):
    v = np.concatenate([np.asarray(a, float).ravel() for a in values])
    v = v[np.isfinite(v)]
    if log:
        v = v[v > 0]
    if v.size == 0:
        return (1.0, 10.0) if log else (0.0, 1.0)
    lo, hi = float(v.min()), float(v.max())
    if lo == hi:
        return (lo / 2, lo * 2) if log else (lo - 0.5, hi + 0.5)
    if log:
        return lo, hi
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _frame(ax, title, xlabel, ylabel):
    out = [f'<rect x="{LEFT}" y="{TOP}" width="{WIDTH - LEFT - RIGHT}" '
           f'height="{HEIGHT - TOP - BOTTOM}" fill="none" stroke="black"/>']
    for t in _ticks(*ax.xlim, ax.xlog):
        x = _fmt(ax.px(t))
        out.append(f'<line x1="{x}" y1="{HEIGHT - BOTTOM}" x2="{x}" y2="{HEIGHT - BOTTOM + 5}" stroke="black"/>')
        out.append(f'<text x="{x}" y="{HEIGHT - BOTTOM + 18}" text-anchor="middle">{_label(t)}</text>')
    for t in _ticks(*ax.ylim, ax.ylog):
        y = _fmt(ax.py(t))
        out.append(f'<line x1="{LEFT - 5}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">{_label(t)}</text>')
    out.append(f'<text x="{WIDTH / 2}" y="{TOP - 15}" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<text x="{(LEFT + WIDTH - RIGHT) / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{(TOP + HEIGHT - BOTTOM) / 2}" text-anchor="middle" '
               f'transform="rotate(-90 18 {(TOP + HEIGHT - BOTTOM) / 2})">{escape(ylabel)}</text>')
    return out


def _document(body):
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">')
    return "\n".join([head, f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>', *body, "</svg>", ""])


def line_plot(path, curves, title="", xlabel="", ylabel="", xlog=False, ylog=False):
    xlim = _limits([c.x for c in curves], xlog)
    ylim = _limits([c.y for c in curves], ylog)
    ax = _Axes(xlim, ylim, xlog, ylog)
    body = _frame(ax, title, xlabel, ylabel)
    for i, c in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        ok = np.isfinite(c.x) & np.isfinite(c.y)
        if xlog:
            ok &= c.x > 0
        if ylog:
            ok &= c.y > 0
        pts = [(ax.px(x), ax.py(y)) for x, y in zip(c.x[ok], c.y[ok])]
        if c.line and len(pts) > 1:
            dash = ' stroke-dasharray="6 4"' if c.dashed else ""
            coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
            body.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
        for x, y in pts:
            if c.marker == "circle":
                body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="{color}"/>')
            elif c.marker == "cross":
                body.append(f'<path d="M{_fmt(x - 3)},{_fmt(y - 3)}L{_fmt(x + 3)},{_fmt(y + 3)}'
                            f'M{_fmt(x - 3)},{_fmt(y + 3)}L{_fmt(x + 3)},{_fmt(y - 3)}" stroke="{color}"/>')
        ly = TOP + 15 + 15 * i
        lx = WIDTH - RIGHT - 170
        body.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        body.append(f'<text x="{lx + 25}" y="{ly}" dominant-baseline="middle">{escape(c.label)}</text>')
    Path(path).write_text(_document(body))


def _color(u):
    # blue-white-red diverging map, u in [-1, 1]
    u = max(-1.0, min(1.0, u))
    if u >= 0:
        r, g, b = 255, round(255 * (1 - u)), round(255 * (1 - u))
    else:
        r, g, b = round(255 * (1 + u)), round(255 * (1 + u)), 255
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap(path, values, xlim, ylim, title="", xlabel="", ylabel="", max_cells=120):
    """Diverging heatmap of ``values[iy, ix]`` (row 0 at the bottom)."""
    values = np.asarray(values, float)
    step = max(1, math.ceil(max(values.shape) / max_cells))
    v = values[::step, ::step]
    ny, nx = v.shape
    scale = float(np.max(np.abs(v))) or 1.0
    ax = _Axes(xlim, ylim, False, False)
    body = _frame(ax, title, xlabel, ylabel)
    cw = (WIDTH - LEFT - RIGHT) / nx
    ch = (HEIGHT - TOP - BOTTOM) / ny
    for iy in range(ny):
        y = HEIGHT - BOTTOM - (iy + 1) * ch
        for ix in range(nx):
            body.append(f'<rect x="{_fmt(LEFT + ix * cw)}" y="{_fmt(y)}" width="{_fmt(cw + 0.3)}" '
                        f'height="{_fmt(ch + 0.3)}" fill="{_color(v[iy, ix] / scale)}"/>')
    body.extend(_frame(ax, "", "", "")[:1])
    body.append(f'<text x="{WIDTH - RIGHT}" y="{TOP - 5}" text-anchor="end">max |W| = {scale:.3g}</text>')
    Path(path).write_text(_document(body))
