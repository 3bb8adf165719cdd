"""Minimal line-chart SVG writer for quick looks at CSV series."""
from __future__ import annotations

from typing import Mapping, Sequence, Tuple
from xml.sax.saxutils import escape

COLORS = ("#1f77b4", "#e377c2", "#000000", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")

WIDTH, HEIGHT, PAD = 640, 400, 50


def line_chart(series: Mapping[str, Tuple[Sequence[float], Sequence[float]]],
               xlabel: str = "t", ylabel: str = "capital") -> str:
    xs = [x for xv, _ in series.values() for x in xv]
    ys = [y for _, yv in series.values() for y in yv]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1

    def sx(x):
        return PAD + (x - x0) / (x1 - x0) * (WIDTH - 2 * PAD)

    def sy(y):
        return HEIGHT - PAD - (y - y0) / (y1 - y0) * (HEIGHT - 2 * PAD)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<line x1="{PAD}" y1="{HEIGHT - PAD}" x2="{WIDTH - PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
           f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
           f'<text x="{WIDTH / 2}" y="{HEIGHT - 10}" text-anchor="middle">{escape(xlabel)}</text>',
           f'<text x="15" y="{HEIGHT / 2}" transform="rotate(-90 15 {HEIGHT / 2})" '
           f'text-anchor="middle">{escape(ylabel)}</text>',
           f'<text x="{PAD - 5}" y="{HEIGHT - PAD}" text-anchor="end" font-size="10">{y0:.4g}</text>',
           f'<text x="{PAD - 5}" y="{PAD + 4}" text-anchor="end" font-size="10">{y1:.4g}</text>',
           f'<text x="{WIDTH - PAD}" y="{HEIGHT - PAD + 15}" text-anchor="middle" font-size="10">{x1:.4g}</text>']
    if y0 < 0 < y1:
        out.append(f'<line x1="{PAD}" y1="{sy(0):.2f}" x2="{WIDTH - PAD}" y2="{sy(0):.2f}" '
                   'stroke="#bbbbbb" stroke-dasharray="4 4"/>')
    for i, (name, (xv, yv)) in enumerate(series.items()):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xv, yv))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{WIDTH - PAD + 5 - 120}" y="{PAD + 15 * (i + 1)}" fill="{color}" '
                   f'font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
