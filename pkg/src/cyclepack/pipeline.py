"""End-to-end drivers: combinatorial and LP-rounding pipelines with exact baselines."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .approx import approx_pack
from .errors import CyclePackError, GuaranteeViolation
from .exact import enumerate_cycles, exact_lp, exact_max_packing
from .families import FamilyKind, FamilySpec, make_family
from .io import Instance, to_jsonable, write_csv
from .lp import FractionalPacking, refine_min_length, solve_packing_lp
from .packing import Mode, Packing
from .rounding import round_edge, round_vertex, round_weighted_vertex
from .uncross import laminarize_lp

__all__ = [
    "BenchReport",
    "BenchRow",
    "PipelineConfig",
    "laminar_lp",
    "round_laminar",
    "run_bench",
    "run_pipeline",
]

PIPELINES = ("combinatorial", "lp_round", "both")


@dataclass(frozen=True)
class PipelineConfig:
    family: str = "all"
    mode: str = "vertex"
    eps: Fraction = Fraction(1, 10)
    pipeline: str = "both"
    weighted: bool = False
    exact: bool = True
    cap: int | None = None


@dataclass
class BenchRow:
    instance: str
    family: str
    mode: str
    opt: int | None = None
    opt_kind: str = "—"
    lp: Fraction | None = None
    combinatorial: int | None = None
    rounding: int | None = None
    rounding_weight: Fraction | None = None
    ratio_combinatorial: Fraction | None = None
    ratio_rounding: Fraction | None = None
    rounding_bound: Fraction | None = None
    exact_lp: Fraction | None = None
    runtime_ms: dict[str, float] = field(default_factory=dict)
    status: str = "ok"
    error: str = ""

    def as_dict(self) -> dict[str, Any]:
        d = asdict(self)
        rt = d.pop("runtime_ms")
        for k, v in rt.items():
            d[f"ms_{k}"] = round(v, 3)
        for k, v in d.items():
            if v is None:
                d[k] = "—"
        return to_jsonable(d)


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def to_json(self) -> list[dict[str, Any]]:
        return [r.as_dict() for r in self.rows]

    def to_csv(self, path: str | None = None) -> str:
        return write_csv(self.to_json(), path)

    @property
    def failures(self) -> list[BenchRow]:
        return [r for r in self.rows if r.status != "ok"]


def _ratio(a: Fraction | int | None, b: Fraction | int | None) -> Fraction | None:
    if a is None or b is None or b == 0:
        return None
    return Fraction(a) / Fraction(b)


def _family(inst: Instance, kind: str) -> FamilySpec:
    k = FamilyKind(kind)
    return make_family(k, inst.graph, inst.demand_edges if k.uses_demand else ())


def _check_packing(p: Packing, f: FamilySpec, what: str) -> None:
    if not p.is_disjoint():
        raise GuaranteeViolation(f"{what}: cycles are not disjoint")
    for c in p.cycles:
        f.graph.check_cycle(c)
        if not f.contains(c):
            raise GuaranteeViolation(f"{what}: {c!r} is not a family member")


def laminar_lp(
    inst: Instance, f: FamilySpec, mode: Mode | str, *, weighted: bool = False, trace: list | None = None
) -> tuple[FractionalPacking, FractionalPacking]:
    """Optimal LP solution and a length-minimal laminar optimum of the same value."""
    g = inst.graph
    weights = (inst.demand_weights or {d: Fraction(1) for d in inst.demand_edges}) if weighted else None
    fp, _ = solve_packing_lp(g, f, mode, weights)
    refined = refine_min_length(g, f, mode, fp.value, weights, seed=fp)
    lam = laminarize_lp(f, refined, trace=trace)
    return fp, lam


def round_laminar(inst: Instance, lam: FractionalPacking, *, weighted: bool = False) -> Packing:
    g = inst.graph
    if lam.mode is Mode.EDGE:
        return round_edge(g, lam)
    if weighted:
        return round_weighted_vertex(g, lam)
    return round_vertex(g, lam)


def run_pipeline(inst: Instance, config: PipelineConfig = PipelineConfig()) -> BenchRow:
    """Run the configured pipelines on one instance and check every guarantee.

    Raises the first module error; :func:`run_bench` records errors per row.
    """
    if config.pipeline not in PIPELINES:
        raise ValueError(f"pipeline must be one of {PIPELINES}")
    mode = Mode(config.mode)
    f = _family(inst, config.family)
    row = BenchRow(inst.name, f.kind.value, mode.value)
    g = inst.graph
    weights = None
    if config.weighted:
        weights = inst.demand_weights or {d: Fraction(1) for d in inst.demand_edges}

    if config.exact:
        t0 = time.perf_counter()
        cat = enumerate_cycles(g, f, config.cap)
        if not cat.truncated:
            row.opt = exact_max_packing(cat, mode).size if weights is None else None
            row.opt_kind = "exact" if weights is None else "—"
            row.exact_lp = exact_lp(cat, mode, weights)
        row.runtime_ms["exact"] = (time.perf_counter() - t0) * 1000

    if config.pipeline in ("combinatorial", "both"):
        t0 = time.perf_counter()
        p = approx_pack(g, f, config.eps, mode)
        row.runtime_ms["combinatorial"] = (time.perf_counter() - t0) * 1000
        _check_packing(p, f, "combinatorial")
        row.combinatorial = p.size
        row.ratio_combinatorial = _ratio(p.size, row.opt)
        if row.opt is not None and p.size < (Fraction(1, 3) - Fraction(config.eps)) * row.opt:
            raise GuaranteeViolation(f"combinatorial {p.size} below (1/3 - eps) * {row.opt}")

    if config.pipeline in ("lp_round", "both"):
        t0 = time.perf_counter()
        fp, lam = laminar_lp(inst, f, mode, weighted=config.weighted)
        row.runtime_ms["lp"] = (time.perf_counter() - t0) * 1000
        row.lp = fp.value
        if row.exact_lp is not None and row.exact_lp != fp.value:
            raise GuaranteeViolation(f"column generation {fp.value} != full LP {row.exact_lp}")
        t0 = time.perf_counter()
        r = round_laminar(inst, lam, weighted=config.weighted)
        row.runtime_ms["rounding"] = (time.perf_counter() - t0) * 1000
        _check_packing(r, f, "rounding")
        row.rounding = r.size
        got = Fraction(r.info.get("weight", r.size))
        row.rounding_weight = got
        row.rounding_bound = Fraction(r.info.get("bound", Fraction(1, 5)))
        row.ratio_rounding = _ratio(got, fp.value)
        if got < row.rounding_bound * fp.value:
            raise GuaranteeViolation(f"rounding {got} below {row.rounding_bound} * LP {fp.value}")
    return row


def _safe_row(args: tuple[Instance, PipelineConfig]) -> BenchRow:
    inst, config = args
    try:
        return run_pipeline(inst, config)
    except CyclePackError as exc:
        row = BenchRow(inst.name, config.family, config.mode)
        row.status = "guarantee" if isinstance(exc, GuaranteeViolation) else "error"
        row.error = f"{type(exc).__name__}: {exc}"
        return row


def run_bench(
    instances: Iterable[Instance], configs: Sequence[PipelineConfig], *, workers: int = 1
) -> BenchReport:
    """All instance/config pairs; rows keep input order whatever ``workers`` is."""
    jobs = [(inst, cfg) for inst in instances for cfg in configs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_safe_row, jobs))
    else:
        rows = [_safe_row(j) for j in jobs]
    return BenchReport(rows)
