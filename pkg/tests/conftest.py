from __future__ import annotations

import sys
from pathlib import Path
from typing import Mapping, Sequence

import pytest
from hypothesis import HealthCheck, settings

from cyclepack.generators import geometric_rotation, grid
from cyclepack.planar import EmbeddedGraph, build_embedding

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


# ---------------------------------------------------------------------------
# Small graph builders
# ---------------------------------------------------------------------------


def drawn(
    pos: Mapping[int, tuple[float, float]],
    edges: Sequence[tuple[int, int]],
    outer: set[int] | None = None,
    *,
    directed: bool = False,
) -> EmbeddedGraph:
    """Straight-line drawing; ``outer`` picks the face walk used as the infinite face."""
    rot = geometric_rotation(pos, edges)
    g = build_embedding(len(pos), edges, rot, directed=directed, positions=pos)
    if outer is None:
        return g
    idx = next(i for i, w in enumerate(g.walks) if {g.tail(d) for d in w} == outer)
    return build_embedding(len(pos), edges, rot, directed=directed, infinite_face=idx, positions=pos)


def k4() -> EmbeddedGraph:
    pos = {0: (0.0, 0.0), 1: (4.0, 0.0), 2: (2.0, 3.5), 3: (2.0, 1.2)}
    return drawn(pos, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], {0, 1, 2})


def triangle() -> EmbeddedGraph:
    return drawn({0: (0.0, 0.0), 1: (1.0, 0.0), 2: (0.5, 1.0)}, [(0, 1), (1, 2), (0, 2)])


def tree5() -> EmbeddedGraph:
    return build_embedding(5, [(0, 1), (0, 2), (2, 3), (2, 4)])


def theta() -> EmbeddedGraph:
    """Poles 0 and 1 joined by three paths through 2, 3 and 4 (top to bottom)."""
    pos = {0: (0.0, 0.0), 1: (2.0, 0.0), 2: (1.0, 1.0), 3: (1.0, 0.0), 4: (1.0, -1.0)}
    return drawn(pos, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)], {0, 1, 2, 4})


def bridged_triangles() -> EmbeddedGraph:
    pos = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (0.5, 1.0), 3: (3.0, 0.0), 4: (4.0, 0.0), 5: (3.5, 1.0)}
    return drawn(pos, [(0, 1), (1, 2), (0, 2), (1, 3), (3, 4), (4, 5), (3, 5)])


def nested_triangles() -> EmbeddedGraph:
    pos = {0: (0.0, 0.0), 1: (6.0, 0.0), 2: (3.0, 5.0), 3: (2.0, 1.0), 4: (4.0, 1.0), 5: (3.0, 3.0)}
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return drawn(pos, edges, {0, 1, 2})


def disjoint_triangles(k: int) -> EmbeddedGraph:
    pos: dict[int, tuple[float, float]] = {}
    edges = []
    for i in range(k):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        pos.update({a: (3.0 * i, 0.0), b: (3.0 * i + 1, 0.0), c: (3.0 * i + 0.5, 1.0)})
        edges += [(a, b), (b, c), (a, c)]
    return drawn(pos, edges)


def strip(n: int) -> EmbeddedGraph:
    """``1 x n`` strip of unit squares."""
    return grid(2, n + 1).graph


def odd_cycle_with_pendant() -> EmbeddedGraph:
    pos = {0: (0.0, 0.0), 1: (2.0, 0.0), 2: (2.5, 1.5), 3: (1.0, 2.5), 4: (-0.5, 1.5), 5: (4.0, 0.0), 6: (5.0, 0.0)}
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6)]
    return drawn(pos, edges)


def square_with_diagonal() -> EmbeddedGraph:
    """Even 4-cycle 0-1-2-3 plus chord 0-2: two odd triangles."""
    pos = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.0, 1.0)}
    return drawn(pos, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], {0, 1, 2, 3})


def two_triangles_sharing_edge() -> EmbeddedGraph:
    """Triangles 0-1-2 and 0-1-3 share edge 0 = (0, 1)."""
    pos = {0: (0.0, 0.0), 1: (2.0, 0.0), 2: (1.0, 1.0), 3: (1.0, -1.0)}
    return drawn(pos, [(0, 1), (1, 2), (2, 0), (1, 3), (3, 0)], {0, 1, 2, 3})


def edge_cycle(g: EmbeddedGraph, vertex_walk: Sequence[int]):
    """The cycle through the given vertices in order (single edges between consecutive ones)."""
    ids = []
    n = len(vertex_walk)
    for i in range(n):
        u, v = vertex_walk[i], vertex_walk[(i + 1) % n]
        ids.append(next(e for e, uv in g.edges.items() if set(uv) == {u, v}))
    return g.cycle(ids)


@pytest.fixture
def tmp_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path
