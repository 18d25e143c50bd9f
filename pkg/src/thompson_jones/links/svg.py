"""SVG drawing of a built link: domain tree below, target tree above, closure on the right."""

from __future__ import annotations

from ..group import TreePair
from .build import layout

__all__ = ["export_svg"]

_SCALE = 40
_GAP = 0.25  # how far under-strands stop short of a crossing
_MARGIN = 1


def _trim(a, b, d):
    (x0, y0), (x1, y1) = a, b
    length = ((x1 - x0) ** 2 + (y1 - y0) ** 2) ** 0.5
    t = min(d / length, 0.5) if length else 0
    return (x0 + (x1 - x0) * t, y0 + (y1 - y0) * t)


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def export_svg(g: TreePair) -> str:
    lay = layout(g)
    if not lay.arcs:
        r = _SCALE
        size = 3 * r
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}">\n'
            f'  <circle cx="{_fmt(1.5 * r)}" cy="{_fmt(1.5 * r)}" r="{r}" fill="none" stroke="black" stroke-width="2"/>\n'
            "</svg>\n"
        )
    pts = [p for _, _, path in lay.arcs for p in path]
    xmin = min(x for x, _ in pts) - _MARGIN
    xmax = max(x for x, _ in pts) + _MARGIN
    ymin = min(y for _, y in pts) - _MARGIN
    ymax = max(y for _, y in pts) + _MARGIN

    def screen(p):
        x, y = p
        return (x - xmin) * _SCALE, (ymax - y) * _SCALE

    lines = []
    for a, b, path in lay.arcs:
        path = list(path)
        # under ports are the even ones
        if a[1] % 2 == 0:
            path[0] = _trim(path[0], path[1], _GAP)
        if b[1] % 2 == 0:
            path[-1] = _trim(path[-1], path[-2], _GAP)
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(screen, path))
        lines.append(f'  <polyline points="{coords}" fill="none" stroke="black" stroke-width="2"/>')
    n = lay.leaves
    x0, y0 = screen((0, 0))
    x1, _ = screen((2 * (n - 1), 0))
    width = (xmax - xmin) * _SCALE
    height = (ymax - ymin) * _SCALE
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" height="{_fmt(height)}">\n'
        f'  <line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" stroke="#bbbbbb" stroke-dasharray="4 4"/>\n'
        + "\n".join(lines)
        + "\n</svg>\n"
    )
