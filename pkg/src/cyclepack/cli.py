"""Command line interface: ``cyclepack gen|pack|lp|laminarize|round|exact|bench``.

Exit codes: 0 success, 2 a guarantee check failed, 3 bad instance or parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .approx import approx_pack
from .draw import render_svg
from .errors import CyclePackError, GuaranteeViolation, InstanceError, Truncated
from .exact import enumerate_cycles, exact_lp, exact_max_packing, exact_min_transversal
from .families import FamilyKind, make_family
from .generators import generate, random_planar
from .io import Instance, dump_instance, load_instance, parse_frac, to_jsonable
from .lp import solve_packing_lp
from .packing import Mode
from .pipeline import PIPELINES, PipelineConfig, laminar_lp, round_laminar, run_bench

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_GUARANTEE = 2
EXIT_INSTANCE = 3


def _emit(obj: Any, out: str | None) -> None:
    text = json.dumps(to_jsonable(obj), indent=1, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _family(inst: Instance, name: str | None, *, weighted: bool = False):
    if name is None:
        if weighted:
            name = FamilyKind.D_CYCLE.value
        else:
            name = FamilyKind.ALL_DIRECTED.value if inst.graph.directed else FamilyKind.ALL.value
    kind = FamilyKind(name)
    return make_family(kind, inst.graph, inst.demand_edges if kind.uses_demand else ())


def _packing_json(p, extra: dict[str, Any] | None = None) -> dict[str, Any]:
    out = {"mode": p.mode, "size": p.size, "cycles": p.cycles}
    out.update({k: v for k, v in p.info.items() if k not in ("half", "order")})
    if extra:
        out.update(extra)
    return out


def _support(x) -> list[dict[str, Any]]:
    return [{"cycle": c, "x": v} for c, v in sorted(x.entries.items(), key=lambda t: t[0].key)]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    inst = generate(args.kind, [int(p) for p in args.params], args.seed)
    text = dump_instance(inst, args.out)
    if not args.out:
        print(text)
    return EXIT_OK


def cmd_pack(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    f = _family(inst, args.family)
    p = approx_pack(inst.graph, f, parse_frac(args.eps), args.mode)
    _emit(_packing_json(p, {"family": f.kind, "eps": parse_frac(args.eps)}), args.out)
    if args.draw:
        render_svg(inst.graph, p.cycles, args.draw, title=f"{inst.name} combinatorial")
    return EXIT_OK


def cmd_lp(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    f = _family(inst, args.family, weighted=args.weighted)
    weights = (inst.demand_weights or {d: Fraction(1) for d in inst.demand_edges}) if args.weighted else None
    fp, dual = solve_packing_lp(inst.graph, f, args.mode, weights)
    _emit(
        {
            "family": f.kind,
            "mode": fp.mode,
            "value": fp.value,
            "support": _support(fp),
            "dual": {"y": {k: v for k, v in sorted(dual.y.items()) if v}, "objective": dual.objective},
            "columns": len(fp.info.get("columns", [])),
        },
        args.out,
    )
    return EXIT_OK


def cmd_laminarize(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    f = _family(inst, args.family, weighted=args.weighted)
    trace: list = []
    fp, lam = laminar_lp(inst, f, args.mode, weighted=args.weighted, trace=trace)
    payload: dict[str, Any] = {
        "family": f.kind,
        "mode": lam.mode,
        "value": lam.value,
        "objective": lam.objective(),
        "steps": lam.info.get("laminarize_steps", 0),
        "before": _support(fp),
        "after": _support(lam),
    }
    if args.trace:
        payload["trace"] = trace
    _emit(payload, args.out)
    if args.draw:
        render_svg(inst.graph, lam.support, args.draw, title=f"{inst.name} laminar support")
    return EXIT_OK


def cmd_round(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    weighted = args.mode == "weighted"
    mode = Mode.VERTEX if weighted else Mode(args.mode)
    f = _family(inst, args.family, weighted=weighted)
    fp, lam = laminar_lp(inst, f, mode, weighted=weighted)
    p = round_laminar(inst, lam, weighted=weighted)
    got = Fraction(p.info.get("weight", p.size))
    ratio = got / fp.value if fp.value else None
    _emit(_packing_json(p, {"family": f.kind, "lp": fp.value, "ratio": ratio if ratio is not None else "—"}), args.out)
    if args.draw:
        render_svg(inst.graph, p.cycles, args.draw, title=f"{inst.name} rounded")
    return EXIT_OK


def cmd_exact(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    f = _family(inst, args.family)
    cat = enumerate_cycles(inst.graph, f)
    if cat.truncated:
        raise Truncated(f"more than {len(cat)} cycles; raise CYCLEPACK_CYCLE_CAP")
    if args.what == "pack":
        p = exact_max_packing(cat, args.mode)
        _emit(_packing_json(p, {"family": f.kind, "cycles_total": len(cat)}), args.out)
    elif args.what == "transversal":
        t = exact_min_transversal(cat, args.mode)
        _emit({"family": f.kind, "mode": args.mode, "size": len(t), "elements": t}, args.out)
    else:
        weights = inst.demand_weights if args.weighted else None
        _emit({"family": f.kind, "mode": args.mode, "value": exact_lp(cat, args.mode, weights)}, args.out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    instances = [load_instance(p) for p in args.instances]
    for s in range(args.random):
        instances.append(random_planar(args.n, args.seed + s))
    families = args.family or ["all"]
    configs = [
        PipelineConfig(family=fam, mode=args.mode, eps=parse_frac(args.eps), pipeline=args.pipeline)
        for fam in families
    ]
    report = run_bench(instances, configs, workers=args.workers)
    _emit(report.to_json(), args.out)
    if args.csv:
        report.to_csv(args.csv)
    if any(r.status == "guarantee" for r in report.rows):
        return EXIT_GUARANTEE
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclepack", description="Disjoint cycle packing in planar graphs.")
    sub = ap.add_subparsers(dest="command", required=True)
    families = [k.value for k in FamilyKind]

    def common(p: argparse.ArgumentParser, *, mode_choices: Sequence[str] = ("vertex", "edge")) -> None:
        p.add_argument("instance")
        p.add_argument("--family", choices=families)
        p.add_argument("--mode", choices=list(mode_choices), default="vertex")
        p.add_argument("--out")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind")
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pack", help="combinatorial approximation")
    common(p)
    p.add_argument("--eps", default="1/10")
    p.add_argument("--draw")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("lp", help="packing LP by column generation")
    common(p)
    p.add_argument("--weighted", action="store_true")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("laminarize", help="laminar optimal LP solution")
    common(p)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--draw")
    p.set_defaults(func=cmd_laminarize)

    p = sub.add_parser("round", help="LP rounding")
    common(p, mode_choices=("vertex", "edge", "weighted"))
    p.add_argument("--draw")
    p.set_defaults(func=cmd_round)

    p = sub.add_parser("exact", help="brute-force baselines")
    p.add_argument("what", choices=["pack", "transversal", "lp"])
    common(p)
    p.add_argument("--weighted", action="store_true")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bench", help="run pipelines over many instances")
    p.add_argument("instances", nargs="*")
    p.add_argument("--random", type=int, default=0, help="add this many random planar instances")
    p.add_argument("--n", type=int, default=10, help="vertices of the random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", action="append", choices=families)
    p.add_argument("--mode", choices=["vertex", "edge"], default="vertex")
    p.add_argument("--eps", default="1/10")
    p.add_argument("--pipeline", choices=list(PIPELINES), default="both")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, Truncated, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSTANCE
    except GuaranteeViolation as exc:
        print(f"guarantee violated: {exc}", file=sys.stderr)
        return EXIT_GUARANTEE
    except CyclePackError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GUARANTEE


if __name__ == "__main__":
    sys.exit(main())
