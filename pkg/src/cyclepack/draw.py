"""Static SVG drawings of embedded graphs with highlighted cycles."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import networkx as nx

from .planar import Cycle, EmbeddedGraph

__all__ = ["render_svg"]

_PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _layout(g: EmbeddedGraph) -> dict[int, tuple[float, float]]:
    if g.positions and all(v in g.positions for v in g.vertices):
        return {v: (float(x), float(y)) for v, (x, y) in g.positions.items()}
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from(g.edges.values())
    pos = nx.planar_layout(simple) if simple.number_of_edges() else nx.circular_layout(simple)
    return {v: (float(p[0]), float(p[1])) for v, p in pos.items()}


def render_svg(
    g: EmbeddedGraph,
    cycles: Sequence[Cycle] = (),
    path: str | Path | None = None,
    *,
    size: int = 600,
    title: str = "",
) -> str:
    """Draw ``g`` with each cycle in its own colour; returns the SVG text."""
    pos = _layout(g)
    if not pos:
        pos = {0: (0.0, 0.0)}
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = 20

    def sx(v: int) -> tuple[float, float]:
        x, y = pos[v]
        return (pad + (x - min(xs)) / span * (size - 2 * pad), pad + (max(ys) - y) / span * (size - 2 * pad))

    colour = {}
    for i, c in enumerate(cycles):
        for e in c.edges:
            colour.setdefault(e, _PALETTE[i % len(_PALETTE)])
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    if title:
        out.append(f'<title>{escape(title)}</title>')
    for e, (u, v) in sorted(g.edges.items()):
        (x1, y1), (x2, y2) = sx(u), sx(v)
        col = colour.get(e, "#bbbbbb")
        width = 3 if e in colour else 1
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{col}" stroke-width="{width}"/>')
    for v in sorted(g.vertices):
        x, y = sx(v)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#333333"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
