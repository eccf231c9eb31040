"""Absorbing-path assembly rate and absorb correctness across host sizes and gadget counts."""

import argparse
import math
import random
import time
from dataclasses import dataclass

from monocycle.absorbing import AbsorbingParams, absorb, build_absorbing_path, check_path
from monocycle.extremal import FamilyKind, GenSpec, random_instance
from monocycle.graph import Color, ColoredGraph


@dataclass
class RateConfig:
    sizes: tuple[int, ...] = (30, 40, 50, 60)
    gadget_divisors: tuple[int, ...] = (4, 6, 8)   # gadgets = n // divisor
    trials: int = 20
    bipartite_p: float = 0.85


def host(n, seed, variant, cfg):
    if variant == "vertex":
        return random_instance(GenSpec(FamilyKind.RANDOM_DENSE, n, seed=seed,
                                       delta_min=math.ceil(3 * n / 4), red_bias=1.0))
    rng = random.Random(seed)
    h = n // 2
    return ColoredGraph.from_edges(n, [(u, v, "R") for u in range(h) for v in range(h, n)
                                       if rng.random() < cfg.bipartite_p])


def trial(n, seed, variant, gadgets, cfg):
    g = host(n, seed, variant, cfg)
    bip = None if variant == "vertex" else (tuple(range(n // 2)), tuple(range(n // 2, n)))
    try:
        ap = build_absorbing_path(g, AbsorbingParams(gadgets=gadgets), seed=seed, color=Color.RED,
                                  variant=variant, bipartition=bip)
    except Exception:
        return False, False
    rng = random.Random(seed)
    outside = [v for v in range(n) if v not in set(ap.path)]
    if variant == "vertex":
        W = rng.sample(outside, min(ap.coverage_floor, len(outside)))
    else:
        xs = set(ap.bipartition[0])
        ox = [v for v in outside if v in xs]
        oy = [v for v in outside if v not in xs]
        k = min(ap.coverage_floor, len(ox), len(oy))
        W = rng.sample(ox, k) + rng.sample(oy, k)
    p = absorb(g, ap, W, Color.RED)
    ok = (p[0], p[-1]) == (ap.path[0], ap.path[-1]) and sorted(p) == sorted(set(ap.path) | set(W)) \
        and bool(check_path(g.view(Color.RED), p))
    return True, ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--sizes", nargs="+", type=int, default=[30, 40, 50, 60])
    a = ap.parse_args()
    cfg = RateConfig(sizes=tuple(a.sizes), trials=a.trials)
    print(f"{'variant':<7} {'n':>3} {'gadgets':>7} {'assembled':>10} {'absorbed':>9} {'sec':>6}")
    for variant in ("vertex", "pair"):
        for n in cfg.sizes:
            for div in cfg.gadget_divisors:
                t0 = time.perf_counter()
                res = [trial(n, s, variant, n // div, cfg) for s in range(cfg.trials)]
                asm = sum(r[0] for r in res)
                good = sum(r[1] for r in res)
                print(f"{variant:<7} {n:>3} {n // div:>7} {asm:>6}/{cfg.trials} {good:>5}/{asm:<3} "
                      f"{time.perf_counter() - t0:>6.2f}")


if __name__ == "__main__":
    main()
