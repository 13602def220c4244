"""Packing modes and the integral :class:`Packing` result type."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .planar import Cycle

__all__ = ["Mode", "Packing", "elements", "pairwise_disjoint", "conflicts"]


class Mode(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"


def elements(cycle: Cycle, mode: Mode | str) -> frozenset[int]:
    """Vertices or edges of a cycle depending on the packing mode."""
    return cycle.vertex_set if Mode(mode) is Mode.VERTEX else cycle.edge_set


def conflicts(a: Cycle, b: Cycle, mode: Mode | str) -> bool:
    return not elements(a, mode).isdisjoint(elements(b, mode))


def pairwise_disjoint(cycles: Sequence[Cycle], mode: Mode | str) -> bool:
    seen: set[int] = set()
    for c in cycles:
        el = elements(c, mode)
        if not seen.isdisjoint(el):
            return False
        seen |= el
    return True


@dataclass
class Packing:
    """A collection of pairwise disjoint cycles (vertex- or edge-disjoint)."""

    cycles: list[Cycle]
    mode: Mode
    info: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.mode = Mode(self.mode)
        self.cycles = sorted(self.cycles, key=lambda c: c.key)

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def size(self) -> int:
        return len(self.cycles)

    def is_disjoint(self) -> bool:
        return pairwise_disjoint(self.cycles, self.mode)

    def covered(self) -> frozenset[int]:
        out: set[int] = set()
        for c in self.cycles:
            out |= elements(c, self.mode)
        return frozenset(out)

    @classmethod
    def of(cls, cycles: Iterable[Cycle], mode: Mode | str, **info: object) -> Packing:
        return cls(list(cycles), Mode(mode), dict(info))
