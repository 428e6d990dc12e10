"""Minimal standalone SVG charts. CSV files stay the authoritative outputs."""
from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 640, 420
MARGIN = 60
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _num(x: float) -> str:
    return f"{x:.2f}"


class _Frame:
    def __init__(self, xlim, ylim):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        if self.x1 == self.x0:
            self.x0, self.x1 = self.x0 - 0.5, self.x1 + 0.5
        if self.y1 == self.y0:
            self.y0, self.y1 = self.y0 - 0.5, self.y1 + 0.5

    def px(self, x):
        return MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2 * MARGIN)

    def py(self, y):
        return HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * MARGIN)


def _document(body: list[str], frame: _Frame, title: str, xlabel: str, ylabel: str) -> str:
    left, right = MARGIN, WIDTH - MARGIN
    top, bottom = MARGIN, HEIGHT - MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="{MARGIN / 2}" text-anchor="middle" font-size="16">{escape(title)}</text>',
        *body,
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
    ]
    for frac in (0.0, 0.5, 1.0):
        xv = frame.x0 + frac * (frame.x1 - frame.x0)
        yv = frame.y0 + frac * (frame.y1 - frame.y0)
        parts.append(f'<text x="{_num(frame.px(xv))}" y="{bottom + 16}" text-anchor="middle" '
                     f'font-size="11">{xv:.3g}</text>')
        parts.append(f'<text x="{left - 6}" y="{_num(frame.py(yv) + 4)}" text-anchor="end" '
                     f'font-size="11">{yv:.3g}</text>')
    parts.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 15}" text-anchor="middle" '
                 f'font-size="12">{escape(xlabel)}</text>')
    parts.append(f'<text x="15" y="{HEIGHT / 2}" text-anchor="middle" font-size="12" '
                 f'transform="rotate(-90 15 {HEIGHT / 2})">{escape(ylabel)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def line_chart(series: np.ndarray, title: str, xlabel: str = "iteration",
               ylabel: str = "value") -> str:
    """One polyline per column of ``series`` (rows are x = 0, 1, 2, ...)."""
    series = np.atleast_2d(np.asarray(series, dtype=float))
    steps = series.shape[0]
    frame = _Frame((0, max(steps - 1, 1)), (float(series.min()), float(series.max())))
    body = []
    for j in range(series.shape[1]):
        pts = " ".join(f"{_num(frame.px(t))},{_num(frame.py(series[t, j]))}" for t in range(steps))
        body.append(f'<polyline fill="none" stroke="{PALETTE[j % len(PALETTE)]}" '
                    f'stroke-width="1.2" points="{pts}"/>')
    return _document(body, frame, title, xlabel, ylabel)


def bar_chart(pairs: Sequence[tuple[float, float]], title: str, xlabel: str = "",
              ylabel: str = "count") -> str:
    xs = [float(x) for x, _ in pairs] or [0.0]
    ys = [float(y) for _, y in pairs] or [0.0]
    frame = _Frame((min(xs) - 0.5, max(xs) + 0.5), (0.0, max(ys) or 1.0))
    bar = 0.8 * (frame.px(1) - frame.px(0))
    body = []
    for x, y in zip(xs, ys):
        top = frame.py(y)
        body.append(f'<rect x="{_num(frame.px(x) - bar / 2)}" y="{_num(top)}" width="{_num(bar)}" '
                    f'height="{_num(frame.py(0) - top)}" fill="{PALETTE[0]}"/>')
    return _document(body, frame, title, xlabel, ylabel)


def scatter_chart(pairs: Sequence[tuple[float, float]], title: str, xlabel: str = "",
                  ylabel: str = "") -> str:
    xs = [float(x) for x, _ in pairs] or [0.0]
    ys = [float(y) for _, y in pairs] or [0.0]
    frame = _Frame((min(xs), max(xs)), (min(ys), max(ys)))
    body = [f'<circle cx="{_num(frame.px(x))}" cy="{_num(frame.py(y))}" r="3" fill="{PALETTE[0]}"/>'
            for x, y in zip(xs, ys)]
    return _document(body, frame, title, xlabel, ylabel)


def density_panel(x_edges, y_edges, counts, title: str, center=None) -> str:
    """Shaded grid cells, darker for higher counts, with an optional center marker."""
    counts = np.asarray(counts, dtype=float)
    frame = _Frame((float(x_edges[0]), float(x_edges[-1])), (float(y_edges[0]), float(y_edges[-1])))
    peak = counts.max() or 1.0
    body = []
    for i in range(counts.shape[0]):
        for j in range(counts.shape[1]):
            if counts[i, j] == 0:
                continue
            x, y = frame.px(x_edges[i]), frame.py(y_edges[j + 1])
            w = frame.px(x_edges[i + 1]) - x
            h = frame.py(y_edges[j]) - y
            body.append(f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(w)}" height="{_num(h)}" '
                        f'fill="#08306b" fill-opacity="{counts[i, j] / peak:.3f}"/>')
    if center is not None:
        cx, cy = frame.px(center[0]), frame.py(center[1])
        body.append(f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="5" fill="none" stroke="#d62728" '
                    f'stroke-width="2"/>')
    return _document(body, frame, title, "x", "y")
