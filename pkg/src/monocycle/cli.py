"""Command-line front end: ``monocycle <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import graph as gc
from .absorbing import (AbsorbingParams, AbsorptionError, AssemblyError, SelectionError, absorb,
                        build_absorbing_path, check_path)
from .exact import (CapacityError, CyclePartition, PreconditionError, exact_partition, gg_path_cycle,
                    check_path_pair, verify_partition)
from .expansion import neighborhood_cascade
from .extremal import (ColorPolicy, FamilyKind, GenerationError, GenSpec, build_family, coloring_from_index,
                       num_colorings, random_instance, sharp_degree)
from .graph import Color, ColoredGraph, ParseError
from .matching import PartitionedHost, connected_matching, multipartite_perfect_matching
from .pipeline import PipelineConfig, heuristic_partition
from .regularity import ClusterPartition, random_equitable_partition, reduced_graph
from .robust import is_near_bipartite, robust_certificate


class UsageError(Exception):
    pass


def emit(obj, out=None) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _graph(args) -> ColoredGraph:
    return gc.load_graph(Path(args.graph).read_text())


def _vertex_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.replace(",", " ").split()]


def _int_range(text: str) -> tuple[int, int]:
    if ".." in text:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text}")
    return lo, hi


# ------------------------------------------------------------ oracle cache

def cached_exact(g: ColoredGraph) -> CyclePartition | None:
    """exact_partition memoised on disk under $MONO_CACHE_DIR (keyed by canonical hash)."""
    root = os.environ.get("MONO_CACHE_DIR")
    if not root:
        return exact_partition(g)
    path = Path(root) / f"{g.canonical_hash()}.json"
    if path.exists():
        obj = json.loads(path.read_text())
        return None if obj["partition"] is None else CyclePartition.from_json_obj(obj["partition"])
    part = exact_partition(g)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"partition": None if part is None else part.to_json_obj()}, sort_keys=True))
    return part


# ------------------------------------------------------------ subcommands

def cmd_generate(args) -> int:
    spec = GenSpec(FamilyKind(args.kind), args.n, args.seed, args.delta_min, ColorPolicy(args.policy),
                   args.red_bias, args.keep_prob)
    g = build_family(spec)
    text = gc.dumps_json(g) + "\n" if args.format == "json" else gc.dumps(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args) -> int:
    g = _graph(args)
    rep = gc.degree_report(g)
    out = {"n": g.n, "hash": g.canonical_hash(), "delta": rep.delta, "delta_red": rep.delta_red,
           "delta_blue": rep.delta_blue}
    colors = [Color.parse(args.color)] if args.color else [Color.RED, Color.BLUE]
    for c in colors:
        cert = robust_certificate(g, None, args.eta, args.alpha, None, args.mode, args.seed, c)
        rec = cert.to_json_obj()
        rec["near_bipartite"] = is_near_bipartite(g, float(args.alpha) ** 4, None, None, args.seed, c)
        out[c.code] = rec
    emit(out, args.out)
    return 0


def cmd_cascade(args) -> int:
    g = _graph(args)
    cas = neighborhood_cascade(g, args.root, args.alpha, color=Color.parse(args.color))
    emit(cas.to_json_obj(), args.out)
    return 0


def cmd_absorb_demo(args) -> int:
    g = _graph(args)
    color = Color.parse(args.color)
    budget = args.w_size // 2 if args.variant == "pair" else args.w_size
    params = AbsorbingParams(gadgets=args.gadgets, coverage_floor=max(budget, 1))
    try:
        ap = build_absorbing_path(g, params, seed=args.seed, color=color, variant=args.variant)
    except (AssemblyError, SelectionError, PreconditionError) as exc:
        emit({"error": str(exc), "verified": False}, args.out)
        return 1
    rng = random.Random(args.seed)
    outside = [v for v in range(g.n) if v not in set(ap.path)]
    if ap.variant == "pair":
        xs = set(ap.bipartition[0])
        wx = [v for v in outside if v in xs]
        wy = [v for v in outside if v not in xs]
        k = min(args.w_size // 2, len(wx), len(wy))
        W = sorted(rng.sample(wx, k) + rng.sample(wy, k))
    else:
        W = sorted(rng.sample(outside, min(args.w_size, len(outside))))
    try:
        after = absorb(g, ap, W, color)
    except AbsorptionError as exc:
        emit({"path_before": list(ap.path), "W": W, "error": str(exc), "verified": False}, args.out)
        return 1
    view = g.view(color)
    ok = (check_path(view, after) and after[0] == ap.path[0] and after[-1] == ap.path[-1]
          and sorted(after) == sorted(list(ap.path) + W))
    emit({"path_before": list(ap.path), "W": W, "path_after": list(after), "variant": ap.variant,
          "verified": ok}, args.out)
    return 0 if ok else 1


def cmd_match(args) -> int:
    g = _graph(args)
    if args.mode == "connected":
        if args.h1 is None or args.h2 is None:
            raise UsageError("--h1 and --h2 are required in connected mode")
        rep = connected_matching(g, _vertex_list(args.h1), _vertex_list(args.h2))
        emit(rep.to_json_obj(), args.out)
    else:
        if not args.parts:
            raise UsageError("--parts is required in multipartite mode")
        parts = tuple(tuple(_vertex_list(p)) for p in args.parts.split(";"))
        m = multipartite_perfect_matching(PartitionedHost(g.view(Color.parse(args.color) if args.color else None),
                                                          parts))
        emit(m.to_json_obj(), args.out)
    return 0


def cmd_reduce(args) -> int:
    g = _graph(args)
    if args.clusters:
        part = ClusterPartition.from_json_obj(json.loads(Path(args.clusters).read_text()))
    elif args.cluster_size:
        part = random_equitable_partition(g.n, args.cluster_size, args.seed)
    else:
        raise UsageError("give --clusters or --cluster-size")
    rg = reduced_graph(g, part, args.eps, args.d)
    out = rg.to_json_obj()
    out["min_degree"] = rg.min_degree()
    out["partition"] = part.to_json_obj()
    emit(out, args.out)
    return 0


def cmd_solve(args) -> int:
    g = _graph(args)
    cfg = PipelineConfig()
    if args.config:
        cfg = PipelineConfig.from_json_obj(json.loads(Path(args.config).read_text()))
    t0 = time.perf_counter()
    mode = args.mode
    if mode == "auto":
        mode = "exact" if g.n <= cfg.exact_cap else "heuristic"
    if mode == "exact":
        part = cached_exact(g)
        out = {"partition": None if part is None else part.to_json_obj(), "method": "exact", "trace": []}
    else:
        res = heuristic_partition(g, cfg, args.seed)
        part = res.partition
        out = res.to_json_obj()
    out["verdict"] = "partition" if part is not None else "no partition"
    if part is not None:
        out["verified"] = bool(verify_partition(g, part))
    if not args.no_timing:
        out["elapsed"] = round(time.perf_counter() - t0, 6)
    emit(out, args.out)
    if not args.out:
        print("no partition" if part is None else "partition found", file=sys.stderr)
    return 0 if part is None or out["verified"] else 1


def cmd_verify(args) -> int:
    g = _graph(args)
    obj = json.loads(Path(args.partition).read_text())
    if isinstance(obj, dict) and "partition" in obj:  # full solve output
        obj = obj["partition"]
        if obj is None:
            raise UsageError("the solve output holds no partition")
    part = CyclePartition.from_json_obj(obj)
    v = verify_partition(g, part)
    emit(v.to_json_obj(), args.out)
    if not v.accept:
        print(f"rejected: {v.reason}" + (f" ({v.detail})" if v.detail else ""), file=sys.stderr)
    return 0 if v.accept else 1


@dataclass(frozen=True)
class ExperimentSpec:
    n_range: tuple[int, int]
    degree_rule: tuple[str, int] = ("offset", 0)   # ("abs", d) or ("offset", k): sharp_degree(n) + k
    count: int = 10
    seed_base: int = 0
    checks: tuple[str, ...] = ("partition-exists",)
    complete: bool = False
    all_colorings: bool = False
    out: str | None = None

    def __post_init__(self) -> None:
        if self.n_range[0] > self.n_range[1]:
            raise ValueError("empty n range")

    def degree_floor(self, n: int) -> int:
        kind, val = self.degree_rule
        if self.complete:
            return max(n - 1, 0)
        return val if kind == "abs" else max(0, min(n - 1, sharp_degree(n) + val))

    def instances(self):
        idx = 0
        for n in range(self.n_range[0], self.n_range[1] + 1):
            if self.all_colorings:
                for k in range(num_colorings(n)):
                    yield idx, {"n": n, "coloring": k}, coloring_from_index(n, k)
                    idx += 1
                continue
            for j in range(self.count):
                seed = self.seed_base + idx
                floor = self.degree_floor(n)
                g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, n, seed=seed, delta_min=floor))
                yield idx, {"n": n, "seed": seed, "delta_min": floor}, g
                idx += 1


CHECKS = ("partition-exists", "heuristic-agrees", "gg-path-cycle")


def run_check(name: str, g: ColoredGraph, seed: int) -> bool:
    if name == "partition-exists":
        return cached_exact(g) is not None
    if name == "heuristic-agrees":
        res = heuristic_partition(g, PipelineConfig(), seed)
        if res.partition is not None and not verify_partition(g, res.partition):
            return False
        return (res.partition is not None) == (cached_exact(g) is not None)
    if name == "gg-path-cycle":
        d = gg_path_cycle(g)
        return bool(check_path_pair(g, d)) and max(len(d.red_path), len(d.blue_path)) >= -(-g.n // 2)
    raise UsageError(f"unknown check {name!r}")


def cmd_experiment(args) -> int:
    kind, val = ("abs", args.delta_min) if args.delta_min is not None else ("offset", args.delta_offset)
    spec = ExperimentSpec(args.n, (kind, val), args.count, args.seed_base, tuple(args.check),
                          args.complete or args.all_colorings, args.all_colorings, args.out)
    records, failures = [], 0
    for idx, params, g in spec.instances():
        t0 = time.perf_counter()
        verdicts = {c: run_check(c, g, params.get("seed", idx)) for c in spec.checks}
        rec = {"index": idx, "params": params, "hash": g.canonical_hash(), "verdicts": verdicts}
        if not args.no_timing:
            rec["timings"] = {"total": round(time.perf_counter() - t0, 6)}
        failures += not all(verdicts.values())
        records.append(rec)
    records.sort(key=lambda r: r["index"])
    lines = [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in records]
    summary = {"summary": True, "instances": len(records), "failures": failures,
               "checks": list(spec.checks), "status": "all pass" if failures == 0 else "failures"}
    lines.append(json.dumps(summary, sort_keys=True, separators=(",", ":")))
    if spec.out:
        Path(spec.out).write_text("\n".join(lines) + "\n")
    print("all pass" if failures == 0 else f"{failures} of {len(records)} instances failed")
    return 0 if failures == 0 else 1


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monocycle", description="Red/blue cycle partitions of dense 2-colored graphs.")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock fields from JSON output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS,
                        help="omit wall-clock fields from JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", parents=[common], help="write an extremal or random instance")
    s.add_argument("--kind", required=True, choices=[k.value for k in FamilyKind])
    s.add_argument("--n", type=int, default=9)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--delta-min", type=int, default=0)
    s.add_argument("--policy", default="all-red", choices=[c.value for c in ColorPolicy])
    s.add_argument("--red-bias", type=float, default=0.5)
    s.add_argument("--keep-prob", type=float, default=0.5)
    s.add_argument("--format", choices=["txt", "json"], default="txt")
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("analyze", parents=[common], help="degrees and robustness certificates")
    s.add_argument("--graph", required=True)
    s.add_argument("--color")
    s.add_argument("--eta", default="0.2")
    s.add_argument("--alpha", default="0.05")
    s.add_argument("--mode", choices=["exact", "heuristic", "auto"], default="auto")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("cascade", parents=[common], help="neighbourhood cascade from a root")
    s.add_argument("--graph", required=True)
    s.add_argument("--color", default="R")
    s.add_argument("--root", type=int, required=True)
    s.add_argument("--alpha", default="0.3")
    s.add_argument("--out")
    s.set_defaults(func=cmd_cascade)

    s = sub.add_parser("absorb-demo", parents=[common], help="build an absorbing path and absorb a random set")
    s.add_argument("--graph", required=True)
    s.add_argument("--color", default="R")
    s.add_argument("--variant", choices=["vertex", "pair", "auto"], default="vertex")
    s.add_argument("--gadgets", type=int)
    s.add_argument("--w-size", type=int, default=3)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_absorb_demo)

    s = sub.add_parser("match", parents=[common], help="connected or multipartite perfect matching")
    s.add_argument("--graph", required=True)
    s.add_argument("--mode", choices=["connected", "multipartite"], default="connected")
    s.add_argument("--h1")
    s.add_argument("--h2")
    s.add_argument("--parts", help="semicolon-separated vertex lists")
    s.add_argument("--color")
    s.add_argument("--out")
    s.set_defaults(func=cmd_match)

    s = sub.add_parser("reduce", parents=[common], help="reduced graph of a cluster partition")
    s.add_argument("--graph", required=True)
    s.add_argument("--clusters")
    s.add_argument("--cluster-size", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--eps", default="0.1")
    s.add_argument("--d", default="0.2")
    s.add_argument("--out")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", parents=[common], help="find a red cycle / blue cycle partition")
    s.add_argument("--graph", required=True)
    s.add_argument("--mode", choices=["heuristic", "exact", "auto"], default="auto")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--config")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="check a claimed partition")
    s.add_argument("--graph", required=True)
    s.add_argument("--partition", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("experiment", parents=[common], help="batch run emitting JSON lines")
    s.add_argument("--n", type=_int_range, required=True, help="lo..hi")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--seed-base", type=int, default=0)
    s.add_argument("--delta-min", type=int)
    s.add_argument("--delta-offset", type=int, default=0, help="floor = ceil((3n-3)/4) - 1 + offset")
    s.add_argument("--complete", action="store_true")
    s.add_argument("--all-colorings", action="store_true")
    s.add_argument("--check", action="append", choices=CHECKS)
    s.add_argument("--out")
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "check", "x") is None:
        args.check = ["partition-exists"]
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, GenerationError, PreconditionError, CapacityError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
