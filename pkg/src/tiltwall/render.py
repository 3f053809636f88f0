"""Deterministic SVG diagrams of walls in the (beta, alpha) half-plane.

Exact data is converted to floats only here, and every coordinate is
printed with a fixed number of digits so that output is byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chern import delta
from .walls import Semicircle, VerticalLine, WallLocus, beta_pm


@dataclass(frozen=True)
class SvgOptions:
    width: int = 640
    height: int = 360
    margin: int = 32
    palette: tuple[str, ...] = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_walls_svg(v, walls: Sequence[WallLocus], opts: SvgOptions = SvgOptions()) -> str:
    semis = [w for w in walls if isinstance(w, Semicircle)]
    verticals = [w for w in walls if isinstance(w, VerticalLine)]
    r = v.r
    mu = float(v.c) / r if r else None

    # horizontal extent
    xs: list[float] = []
    for w in semis:
        rad = float(w.radius())
        xs += [float(w.s) - rad, float(w.s) + rad]
    xs += [float(w.beta) for w in verticals]
    if walls and mu is not None:
        xs.append(mu)
    if not xs:
        xs = [-3.0, 3.0]
    lo, hi = min(xs), max(xs)
    pad = max(0.5, 0.08 * (hi - lo))
    lo, hi = lo - pad, hi + pad
    top = max([float(w.radius()) for w in semis] + [1.0]) * 1.1

    W, H, m = opts.width, opts.height, opts.margin
    sx = (W - 2 * m) / (hi - lo)
    sy = (H - 2 * m) / top
    scale = min(sx, sy)
    X = lambda b: m + (b - lo) * sx
    Y = lambda a: H - m - a * scale
    y0 = Y(0.0)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<title>walls for {v}</title>',
        '<g id="axes" stroke="#000" stroke-width="1">',
        f'<line x1="{_num(m)}" y1="{_num(y0)}" x2="{_num(W - m)}" y2="{_num(y0)}"/>',
    ]
    if lo <= 0 <= hi:
        out.append(f'<line x1="{_num(X(0.0))}" y1="{_num(y0)}" x2="{_num(X(0.0))}" y2="{_num(m)}"/>')
    out.append("</g>")
    out.append(
        f'<text x="{_num(W - m)}" y="{_num(y0 + 16)}" font-size="12" text-anchor="end">beta</text>'
    )

    if walls:
        out.append('<g id="walls" fill="none" stroke-width="1.5">')
        # largest first so smaller arcs are drawn on top
        order = sorted(semis, key=lambda w: (-w.rho_sq, w.s))
        for i, w in enumerate(order):
            rad = float(w.radius())
            x1, x2 = X(float(w.s) - rad), X(float(w.s) + rad)
            rx, ry = rad * sx, rad * scale
            col = opts.palette[i % len(opts.palette)]
            out.append(
                f'<path d="M {_num(x1)} {_num(y0)} A {_num(rx)} {_num(ry)} 0 0 1 '
                f'{_num(x2)} {_num(y0)}" stroke="{col}"><title>{w}</title></path>'
            )
        for w in verticals:
            out.append(
                f'<line x1="{_num(X(float(w.beta)))}" y1="{_num(y0)}" x2="{_num(X(float(w.beta)))}" '
                f'y2="{_num(m)}" stroke="#555"/>'
            )
        out.append("</g>")
        if mu is not None:
            out.append(
                f'<line id="vertical-wall" x1="{_num(X(mu))}" y1="{_num(y0)}" x2="{_num(X(mu))}" '
                f'y2="{_num(m)}" stroke="#777" stroke-dasharray="4 3"/>'
            )
            if delta(v) >= 0:
                out.append('<g id="beta-pm" fill="#000">')
                for b in beta_pm(v):
                    out.append(f'<circle cx="{_num(X(float(b)))}" cy="{_num(y0)}" r="3"/>')
                out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
