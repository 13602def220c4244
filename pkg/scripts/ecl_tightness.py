"""Witness sizes on the two extremal laminar families: truncated dodecahedron and cube lattice."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from cyclepack.cube import cube_7x7_ecl
from cyclepack.exact import min_hitting_set
from cyclepack.generators import truncated_dodecahedron
from cyclepack.rounding import efficient_cycle


@dataclass(frozen=True)
class Family:
    name: str
    graph: object
    cycles: list


def families() -> list[Family]:
    d = truncated_dodecahedron()
    c = cube_7x7_ecl()
    return [
        Family("truncated_dodecahedron", d.graph, [d.graph.cycle(ids) for ids in d.meta["decagons"]]),
        Family("cube_7x7_ecl", c.graph, [c.graph.cycle(ids) for ids in c.meta["blue"] + c.meta["red"]]),
    ]


def closed_cover(cycles, c, limit: int) -> int | None:
    """Fewest vertices anywhere in the graph meeting every cycle that touches ``c`` (``c`` included)."""
    universe = sorted(set().union(*(d.vertex_set for d in cycles if d.vertex_set & c.vertex_set)))
    bit = {v: 1 << i for i, v in enumerate(universe)}
    masks = [sum(bit[v] for v in d.vertex_set) for d in cycles if d.vertex_set & c.vertex_set]
    m = min_hitting_set(masks, limit=limit)
    return None if m is None else bin(m).count("1")


def main() -> None:
    for fam in families():
        ch = efficient_cycle(fam.graph, fam.cycles)
        covers = Counter(closed_cover(fam.cycles, c, 3) for c in fam.cycles)
        print(f"{fam.name}: {len(fam.cycles)} cycles, efficient |W| = {ch.size} ({ch.method})")
        print(f"  closed neighbourhoods coverable by <= 3 vertices: {sum(v for k, v in covers.items() if k is not None)}")


if __name__ == "__main__":
    main()
