"""Self-contained SVG scaling plots: log-log wall time and peak memory
against dimension, annotated with the fitted growth exponent."""
from __future__ import annotations

import math
import os

import numpy as np

from .metrics import fit_loglog

PANEL_W = 420
PANEL_H = 360
MARGIN = 56


class PlotDataError(ValueError):
    """A series has too few positive points to plot."""


def _series(records, metric):
    by_dim = {}
    for r in records:
        by_dim.setdefault(r.dim, []).append(getattr(r, metric))
    pts = [(d, float(np.median(v))) for d, v in sorted(by_dim.items())]
    return [(d, m) for d, m in pts if m > 0]


def _ticks(lo: float, hi: float):
    lo_e = math.floor(math.log10(lo))
    hi_e = math.ceil(math.log10(hi))
    return [10.0 ** e for e in range(lo_e, hi_e + 1)]


def _panel(pts, title, ylabel, x0):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    fit = fit_loglog(pts)
    xt = _ticks(min(xs), max(xs))
    yt = _ticks(min(ys), max(ys))
    lx0, lx1 = math.log10(xt[0]), math.log10(xt[-1])
    ly0, ly1 = math.log10(yt[0]), math.log10(yt[-1])
    if lx1 == lx0:
        lx1 = lx0 + 1
    if ly1 == ly0:
        ly1 = ly0 + 1
    iw = PANEL_W - 2 * MARGIN
    ih = PANEL_H - 2 * MARGIN

    def px(v):
        return x0 + MARGIN + iw * (math.log10(v) - lx0) / (lx1 - lx0)

    def py(v):
        return MARGIN + ih * (1 - (math.log10(v) - ly0) / (ly1 - ly0))

    parts = [
        f'<rect x="{x0 + MARGIN}" y="{MARGIN}" width="{iw}" height="{ih}" '
        'fill="none" stroke="#333"/>',
        f'<text x="{x0 + PANEL_W / 2:.1f}" y="24" text-anchor="middle" '
        f'font-size="14">{title}</text>',
        f'<text x="{x0 + PANEL_W / 2:.1f}" y="{PANEL_H - 10}" text-anchor="middle" '
        'font-size="11">dimension</text>',
        f'<text x="{x0 + 14}" y="{PANEL_H / 2:.1f}" text-anchor="middle" '
        f'font-size="11" transform="rotate(-90 {x0 + 14} {PANEL_H / 2:.1f})">{ylabel}</text>',
    ]
    for t in xt:
        x = px(t)
        parts.append(f'<line x1="{x:.1f}" y1="{MARGIN + ih}" x2="{x:.1f}" '
                     f'y2="{MARGIN + ih + 4}" stroke="#333"/>')
        parts.append(f'<text x="{x:.1f}" y="{MARGIN + ih + 16}" text-anchor="middle" '
                     f'font-size="10">1e{int(math.log10(t))}</text>')
    for t in yt:
        y = py(t)
        parts.append(f'<line x1="{x0 + MARGIN - 4}" y1="{y:.1f}" x2="{x0 + MARGIN}" '
                     f'y2="{y:.1f}" stroke="#333"/>')
        parts.append(f'<text x="{x0 + MARGIN - 6}" y="{y + 3:.1f}" text-anchor="end" '
                     f'font-size="10">1e{int(math.log10(t))}</text>')
    coords = " ".join(f"{px(x):.1f},{py(y):.1f}" for x, y in pts)
    parts.append(f'<polyline points="{coords}" fill="none" stroke="#1f77b4" '
                 'stroke-width="1.5"/>')
    for x, y in pts:
        parts.append(f'<circle cx="{px(x):.1f}" cy="{py(y):.1f}" r="3" fill="#1f77b4"/>')
    parts.append(f'<text x="{x0 + MARGIN + 8}" y="{MARGIN + 16}" font-size="12" '
                 f'fill="#d62728">slope={fit.slope:.2f}</text>')
    return "".join(parts)


def emit_scaling_plot(records, path) -> None:
    """Write one SVG with log-log panels for wall time and peak memory.

    Requires at least 3 records sharing algorithm and precision; a series
    with 1-2 positive points is an error, one with none is omitted.
    """
    if not records:
        raise PlotDataError("no records to plot")
    key = (records[0].algo, records[0].precision)
    group = [r for r in records if (r.algo, r.precision) == key]
    if len({r.dim for r in group}) < 3:
        raise PlotDataError(
            f"series {key[0]}/{key[1]} has fewer than 3 dimensions")
    panels = []
    x0 = 0
    for metric, ylabel in (("wall_s", "wall seconds"), ("peak_kb", "peak KB")):
        pts = _series(group, metric)
        if not pts:
            continue  # metric not measured in this run
        if len(pts) < 3:
            raise PlotDataError(
                f"series {metric} for {key[0]}/{key[1]} has only {len(pts)} "
                "positive points")
        panels.append(_panel(pts, f"{key[0]} ({key[1]}) {metric}", ylabel, x0))
        x0 += PANEL_W
    if not panels:
        raise PlotDataError("no positive measurements in wall_s or peak_kb")
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{x0}" height="{PANEL_H}" '
        f'viewBox="0 0 {x0} {PANEL_H}" font-family="sans-serif">'
        '<rect width="100%" height="100%" fill="white"/>'
        + "".join(panels) + "</svg>\n"
    )
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except Exception:
        try:
            os.remove(path)
        except OSError:
            pass
        raise
