"""Instance files and report serialisation (rationals as ``"p/q"``)."""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import InstanceError
from .planar import Cycle, EmbeddedGraph, build_embedding

__all__ = ["Instance", "dump_instance", "load_instance", "frac_str", "parse_frac", "to_jsonable", "write_csv"]


def frac_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str | int | float) -> Fraction:
    try:
        return Fraction(s) if not isinstance(s, float) else Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"bad rational {s!r}") from exc


@dataclass
class Instance:
    """An embedded graph plus optional demand edges and weights."""

    graph: EmbeddedGraph
    demand_edges: list[int] = field(default_factory=list)
    demand_weights: dict[int, Fraction] = field(default_factory=dict)
    name: str = "instance"
    meta: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        g = self.graph
        n = max(g.vertices, default=-1) + 1
        if set(g.vertices) != set(range(n)):
            raise InstanceError("instance vertices must be 0..n-1")
        edges = [list(g.edges[e]) for e in range(len(g.edges))] if set(g.edges) == set(range(len(g.edges))) else None
        if edges is None:
            raise InstanceError("instance edges must be numbered 0..m-1")
        inf_walk = min(g.faces[g.infinite_face]) if g.faces[g.infinite_face] else None
        out: dict[str, Any] = {
            "name": self.name,
            "vertices": n,
            "edges": edges,
            "directed": g.directed,
            "rotation": [list(g.rotation.get(v, ())) for v in range(n)],
            "infinite_face": inf_walk,
        }
        if self.demand_edges:
            out["demand_edges"] = sorted(self.demand_edges)
        if self.demand_weights:
            out["demand_weights"] = [frac_str(self.demand_weights.get(d, 1)) for d in sorted(self.demand_edges)]
        if g.positions:
            out["positions"] = [list(map(float, g.positions[v])) for v in range(n)]
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Instance:
        try:
            n = int(data["vertices"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceError(f"malformed instance: {exc}") from exc
        pos = data.get("positions")
        positions = {v: (float(x), float(y)) for v, (x, y) in enumerate(pos)} if pos else None
        g = build_embedding(
            n,
            edges,
            data.get("rotation"),
            directed=bool(data.get("directed", False)),
            infinite_face=data.get("infinite_face"),
            positions=positions,
        )
        demand = [int(d) for d in data.get("demand_edges", [])]
        if any(d not in g.edges for d in demand):
            raise InstanceError("demand edge out of range")
        weights_raw = data.get("demand_weights")
        weights: dict[int, Fraction] = {}
        if weights_raw is not None:
            if len(weights_raw) != len(demand):
                raise InstanceError("demand_weights must match demand_edges")
            for d, w in zip(sorted(demand), weights_raw):
                weights[d] = parse_frac(w)
                if weights[d] < 0:
                    raise InstanceError("demand weights must be nonnegative")
        return cls(g, demand, weights, str(data.get("name", "instance")), dict(data.get("meta", {})))


def load_instance(path: str | Path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    return Instance.from_dict(data)


def dump_instance(inst: Instance, path: str | Path | None = None) -> str:
    text = json.dumps(inst.to_dict(), indent=1, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def to_jsonable(obj: Any) -> Any:
    """Convert report objects to JSON-friendly values; rationals become ``"p/q"``."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, Cycle):
        return {"edges": list(obj.key), "vertices": list(obj.vertices)}
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def write_csv(rows: Iterable[Mapping[str, Any]], path: str | Path | None = None) -> str:
    rows = [to_jsonable(r) for r in rows]
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols)
    w.writeheader()
    for r in rows:
        w.writerow({k: r.get(k, "") for k in cols})
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text
