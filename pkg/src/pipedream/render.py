"""Text and vector renderings of RC-graphs.

ASCII uses ``+`` for a crossing and ``.`` for everything else on an ``n x n``
grid.  The SVG draws the staircase ``i + j <= n`` as pipe tiles: a cross for
a crossing, two quarter arcs for an elbow.
"""

from __future__ import annotations

import json

from .rcgraph import RCGraph

__all__ = ["to_ascii", "to_tikz", "to_svg", "to_json", "render", "FORMATS"]

FORMATS = ("ascii", "tikz", "svg", "json")

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")


def to_ascii(D: RCGraph) -> str:
    n = D.n
    return "\n".join("".join("+" if (i, j) in D else "." for j in range(1, n + 1))
                     for i in range(1, n + 1))


def to_tikz(D: RCGraph) -> str:
    n = D.n
    lines = ["\\begin{tikzpicture}[scale=0.5]"]
    for i in range(1, n + 1):
        for j in range(1, n + 2 - i):
            x, y = j - 1, n - i
            if (i, j) in D:
                lines.append(f"  \\node at ({x + 0.5},{y + 0.5}) {{$+$}};")
            else:
                lines.append(f"  \\draw ({x},{y + 0.5}) arc (-90:0:0.5);")
                lines.append(f"  \\draw ({x + 0.5},{y}) arc (180:90:0.5);")
    lines.append(f"  \\draw[gray] (0,0) grid ({n},{n});")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines)


def _strand_colors(D: RCGraph) -> dict[tuple[int, int, str], str]:
    """Colour each tile half by the strand passing through it."""
    n = D.n
    out = {}
    for k in range(1, n + 1):
        color = _PALETTE[(k - 1) % len(_PALETTE)]
        i, j, heading = k, 1, "right"
        while i >= 1 and j <= n + 1 - i:
            if (i, j) in D:
                out[(i, j, "h" if heading == "right" else "v")] = color
                if heading == "right":
                    j += 1
                else:
                    i -= 1
            elif heading == "right":
                out[(i, j, "lt")] = color
                heading, i = "up", i - 1
            else:
                out[(i, j, "br")] = color
                heading, j = "right", j + 1
    return out


def to_svg(D: RCGraph, show_strands: bool = False, cell: int = 24) -> str:
    n = D.n
    size = n * cell
    colors = _strand_colors(D) if show_strands else {}
    black = "#000"
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    h = cell / 2
    for i in range(1, n + 1):
        for j in range(1, n + 2 - i):
            x, y = (j - 1) * cell, (i - 1) * cell
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                         'fill="none" stroke="#ccc"/>')
            if (i, j) in D:
                parts.append(f'<line x1="{x}" y1="{y + h}" x2="{x + cell}" y2="{y + h}" '
                             f'stroke="{colors.get((i, j, "h"), black)}" stroke-width="2"/>')
                parts.append(f'<line x1="{x + h}" y1="{y}" x2="{x + h}" y2="{y + cell}" '
                             f'stroke="{colors.get((i, j, "v"), black)}" stroke-width="2"/>')
            else:
                parts.append(f'<path d="M {x} {y + h} A {h} {h} 0 0 0 {x + h} {y}" fill="none" '
                             f'stroke="{colors.get((i, j, "lt"), black)}" stroke-width="2"/>')
                parts.append(f'<path d="M {x + h} {y + cell} A {h} {h} 0 0 1 {x + cell} {y + h}" '
                             f'fill="none" stroke="{colors.get((i, j, "br"), black)}" '
                             'stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def to_json(D: RCGraph) -> str:
    return json.dumps(D.to_json())


def render(D: RCGraph, fmt: str = "ascii", show_strands: bool = False) -> str:
    if fmt == "ascii":
        return to_ascii(D)
    if fmt == "tikz":
        return to_tikz(D)
    if fmt == "svg":
        return to_svg(D, show_strands=show_strands)
    if fmt == "json":
        return to_json(D)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
