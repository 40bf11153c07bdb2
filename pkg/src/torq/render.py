"""Deterministic SVG drawings of fans of rank 1 or 2."""
from __future__ import annotations

from math import hypot

from .errors import PreconditionError
from .fan import Fan

SIZE = 120
RADIUS = 90.0


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _end(v: tuple[int, ...]) -> tuple[float, float]:
    x, y = (v[0], 0) if len(v) == 1 else v
    r = hypot(x, y)
    # svg y axis points down
    return RADIUS * x / r, -RADIUS * y / r


def render_svg(F: Fan) -> str:
    if F.rank not in (1, 2):
        raise PreconditionError("render supports rank-2 fans only")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{-SIZE} {-SIZE} {2 * SIZE} {2 * SIZE}" '
        f'width="{2 * SIZE * 2}" height="{2 * SIZE * 2}">',
        f'<rect x="{-SIZE}" y="{-SIZE}" width="{2 * SIZE}" height="{2 * SIZE}" fill="white"/>',
    ]
    ends = [_end(v) for v in F.rays]
    for c in F.cones:
        if len(c) == 2:
            (ax, ay), (bx, by) = ends[c[0]], ends[c[1]]
            pts = f"0.00,0.00 {_fmt(ax)},{_fmt(ay)} {_fmt(bx)},{_fmt(by)}"
            out.append(f'<polygon class="cone" data-cone="{c[0]} {c[1]}" points="{pts}" '
                       f'fill="#4a7bd0" fill-opacity="0.25" stroke="none"/>')
    for i, (v, (x, y)) in enumerate(zip(F.rays, ends)):
        label = "(" + ",".join(str(a) for a in v) + ")"
        out.append(f'<line class="ray" data-ray="{i}" x1="0.00" y1="0.00" x2="{_fmt(x)}" '
                   f'y2="{_fmt(y)}" stroke="black" stroke-width="1.5"/>')
        out.append(f'<text x="{_fmt(x * 1.15)}" y="{_fmt(y * 1.15)}" font-size="9" '
                   f'text-anchor="middle" dominant-baseline="middle">{label}</text>')
    out.append('<circle cx="0.00" cy="0.00" r="2" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
