"""Minimal deterministic SVG line charts.

Output bytes depend only on the data passed in: fixed canvas, fixed palette,
series sorted by name, coordinates printed with fixed precision, and all text
rendered as stroked vector paths from the built-in glyph table (no system
font lookups).  Lowercase input is mapped to the uppercase glyphs.
"""

from __future__ import annotations

import math
from typing import Sequence

WIDTH, HEIGHT = 640.0, 420.0
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 72.0, 160.0, 34.0, 56.0

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")

# Strokes on a 4x8 grid, y upward; each glyph is a tuple of polylines.
_G = {
    "0": (((0, 0), (4, 0), (4, 8), (0, 8), (0, 0)),),
    "1": (((1, 6), (2, 8), (2, 0)), ((1, 0), (3, 0))),
    "2": (((0, 8), (4, 8), (4, 4), (0, 4), (0, 0), (4, 0)),),
    "3": (((0, 8), (4, 8), (4, 0), (0, 0)), ((1, 4), (4, 4))),
    "4": (((0, 8), (0, 4), (4, 4)), ((3, 8), (3, 0))),
    "5": (((4, 8), (0, 8), (0, 4), (4, 4), (4, 0), (0, 0)),),
    "6": (((4, 8), (0, 8), (0, 0), (4, 0), (4, 4), (0, 4)),),
    "7": (((0, 8), (4, 8), (2, 0)),),
    "8": (((0, 0), (4, 0), (4, 8), (0, 8), (0, 0)), ((0, 4), (4, 4))),
    "9": (((0, 0), (4, 0), (4, 8), (0, 8), (0, 4), (4, 4)),),
    "A": (((0, 0), (2, 8), (4, 0)), ((1, 3), (3, 3))),
    "B": (((0, 0), (0, 8), (3, 8), (4, 6), (3, 4), (0, 4)),
          ((3, 4), (4, 2), (3, 0), (0, 0))),
    "C": (((4, 8), (0, 8), (0, 0), (4, 0)),),
    "D": (((0, 0), (0, 8), (2, 8), (4, 6), (4, 2), (2, 0), (0, 0)),),
    "E": (((4, 8), (0, 8), (0, 0), (4, 0)), ((0, 4), (3, 4))),
    "F": (((4, 8), (0, 8), (0, 0)), ((0, 4), (3, 4))),
    "G": (((4, 8), (0, 8), (0, 0), (4, 0), (4, 3), (2, 3)),),
    "H": (((0, 0), (0, 8)), ((4, 0), (4, 8)), ((0, 4), (4, 4))),
    "I": (((1, 0), (3, 0)), ((1, 8), (3, 8)), ((2, 0), (2, 8))),
    "J": (((4, 8), (4, 0), (2, 0), (0, 2)),),
    "K": (((0, 0), (0, 8)), ((4, 8), (0, 4), (4, 0))),
    "L": (((0, 8), (0, 0), (4, 0)),),
    "M": (((0, 0), (0, 8), (2, 4), (4, 8), (4, 0)),),
    "N": (((0, 0), (0, 8), (4, 0), (4, 8)),),
    "O": (((0, 0), (4, 0), (4, 8), (0, 8), (0, 0)),),
    "P": (((0, 0), (0, 8), (4, 8), (4, 4), (0, 4)),),
    "Q": (((0, 0), (4, 0), (4, 8), (0, 8), (0, 0)), ((2, 2), (4, -1))),
    "R": (((0, 0), (0, 8), (4, 8), (4, 4), (0, 4)), ((1, 4), (4, 0))),
    "S": (((4, 8), (0, 8), (0, 4), (4, 4), (4, 0), (0, 0)),),
    "T": (((0, 8), (4, 8)), ((2, 8), (2, 0))),
    "U": (((0, 8), (0, 0), (4, 0), (4, 8)),),
    "V": (((0, 8), (2, 0), (4, 8)),),
    "W": (((0, 8), (1, 0), (2, 4), (3, 0), (4, 8)),),
    "X": (((0, 0), (4, 8)), ((0, 8), (4, 0))),
    "Y": (((0, 8), (2, 4), (4, 8)), ((2, 4), (2, 0))),
    "Z": (((0, 8), (4, 8), (0, 0), (4, 0)),),
    ".": (((2, 0), (2, 1)),),
    ",": (((2, 1), (1, -1)),),
    "-": (((1, 4), (3, 4)),),
    "+": (((2, 2), (2, 6)), ((0, 4), (4, 4))),
    "_": (((0, 0), (4, 0)),),
    "(": (((3, 8), (2, 6), (2, 2), (3, 0)),),
    ")": (((1, 8), (2, 6), (2, 2), (1, 0)),),
    "/": (((0, 0), (4, 8)),),
    "=": (((0, 3), (4, 3)), ((0, 5), (4, 5))),
    "%": (((0, 0), (4, 8)), ((0, 8), (1, 7)), ((4, 0), (3, 1))),
    " ": (),
}

_ADVANCE = 6.0  # glyph cell width on the design grid
_EM = 8.0       # glyph cell height


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def text_paths(s: str, x: float, y: float, size: float,
               anchor: str = "start", color: str = "#000000") -> str:
    """Render `s` as stroked paths; (x, y) is the baseline anchor point."""
    s = s.upper()
    scale = size / _EM
    width = len(s) * _ADVANCE * scale
    if anchor == "middle":
        x -= width / 2.0
    elif anchor == "end":
        x -= width
    parts = []
    for k, ch in enumerate(s):
        glyph = _G.get(ch, _G["-"])
        ox = x + k * _ADVANCE * scale
        for stroke in glyph:
            pts = " ".join(f"{_fmt(ox + gx * scale)},{_fmt(y - gy * scale)}"
                           for gx, gy in stroke)
            parts.append(f'<polyline points="{pts}" fill="none" '
                         f'stroke="{color}" stroke-width="1.0"/>')
    return "".join(parts)


def _nice_step(span: float) -> float:
    if span <= 0:
        return 1.0
    raw = span / 4.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def _ticks(lo: float, hi: float) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = _nice_step(hi - lo)
    t = step * math.ceil(lo / step - 1e-12)
    ticks = []
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _tick_label(v: float) -> str:
    return format(v, ".6g")


def line_chart(title: str, xlabel: str, ylabel: str,
               series: Sequence[tuple[str, Sequence[float], Sequence[float]]]) -> str:
    """Build an SVG line chart; series are sorted by name before drawing.

    Empty series lists produce an empty-axes chart.
    """
    ordered = sorted(series, key=lambda s: s[0])
    xs_all = [float(x) for _, xs, _ in ordered for x in xs]
    ys_all = [float(y) for _, _, ys in ordered for y in ys]
    if xs_all:
        x_lo, x_hi = min(xs_all), max(xs_all)
        y_lo, y_hi = min(ys_all), max(ys_all)
        if x_lo == x_hi:
            x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
        if y_lo == y_hi:
            y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
        pad_x, pad_y = 0.05 * (x_hi - x_lo), 0.05 * (y_hi - y_lo)
        x_lo, x_hi = x_lo - pad_x, x_hi + pad_x
        y_lo, y_hi = y_lo - pad_y, y_hi + pad_y
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(v: float) -> float:
        return MARGIN_L + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v: float) -> float:
        return HEIGHT - MARGIN_B - (v - y_lo) / (y_hi - y_lo) * plot_h

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" '
           f'height="{HEIGHT:.0f}" viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">',
           f'<rect x="0" y="0" width="{WIDTH:.0f}" height="{HEIGHT:.0f}" '
           f'fill="#ffffff"/>']
    # frame
    out.append(f'<rect x="{_fmt(MARGIN_L)}" y="{_fmt(MARGIN_T)}" '
               f'width="{_fmt(plot_w)}" height="{_fmt(plot_h)}" fill="none" '
               f'stroke="#000000" stroke-width="1.0"/>')
    for t in _ticks(x_lo, x_hi):
        px = sx(t)
        out.append(f'<line x1="{_fmt(px)}" y1="{_fmt(HEIGHT - MARGIN_B)}" '
                   f'x2="{_fmt(px)}" y2="{_fmt(HEIGHT - MARGIN_B + 5)}" '
                   f'stroke="#000000" stroke-width="1.0"/>')
        out.append(text_paths(_tick_label(t), px, HEIGHT - MARGIN_B + 18, 9,
                              anchor="middle"))
    for t in _ticks(y_lo, y_hi):
        py = sy(t)
        out.append(f'<line x1="{_fmt(MARGIN_L - 5)}" y1="{_fmt(py)}" '
                   f'x2="{_fmt(MARGIN_L)}" y2="{_fmt(py)}" '
                   f'stroke="#000000" stroke-width="1.0"/>')
        out.append(text_paths(_tick_label(t), MARGIN_L - 9, py + 3, 9,
                              anchor="end"))
    out.append(text_paths(title, MARGIN_L + plot_w / 2.0, MARGIN_T - 12, 12,
                          anchor="middle"))
    out.append(text_paths(xlabel, MARGIN_L + plot_w / 2.0, HEIGHT - 14, 10,
                          anchor="middle"))
    out.append(text_paths(ylabel, 16, MARGIN_T - 12, 10, anchor="start"))

    for idx, (name, xs, ys) in enumerate(ordered):
        color = PALETTE[idx % len(PALETTE)]
        pts = sorted(zip([float(v) for v in xs], [float(v) for v in ys]))
        if pts:
            coord = " ".join(f"{_fmt(sx(px))},{_fmt(sy(py))}" for px, py in pts)
            out.append(f'<polyline points="{coord}" fill="none" '
                       f'stroke="{color}" stroke-width="1.5"/>')
            for px, py in pts:
                out.append(f'<circle cx="{_fmt(sx(px))}" cy="{_fmt(sy(py))}" '
                           f'r="2.5" fill="{color}"/>')
        ly = MARGIN_T + 14 + 16 * idx
        lx = WIDTH - MARGIN_R + 8
        out.append(f'<line x1="{_fmt(lx)}" y1="{_fmt(ly - 3)}" '
                   f'x2="{_fmt(lx + 18)}" y2="{_fmt(ly - 3)}" '
                   f'stroke="{color}" stroke-width="1.5"/>')
        out.append(text_paths(name, lx + 24, ly, 9, anchor="start"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, svg: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(svg)
