"""Compare the structural heuristic with the exact solver: agreement, fallback use and timing."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from monocycle.exact import exact_partition, verify_partition
from monocycle.extremal import FamilyKind, GenSpec, random_instance
from monocycle.pipeline import PipelineConfig, heuristic_partition


@dataclass
class CompareConfig:
    n_lo: int = 10
    n_hi: int = 18
    per_n: int = 20
    degree_offset: int = 1   # floor = ceil(3n/4) + offset
    fallback: bool = True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", nargs=2, type=int, default=[10, 18])
    ap.add_argument("--per-n", type=int, default=20)
    ap.add_argument("--no-fallback", action="store_true")
    a = ap.parse_args()
    cfg = CompareConfig(a.n[0], a.n[1], a.per_n, fallback=not a.no_fallback)
    pc = PipelineConfig(fallback=cfg.fallback)
    print(f"{'n':>3} {'agree':>6} {'invalid':>7} {'heur s':>7} {'exact s':>7}  methods")
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        floor = min(n - 1, -(-3 * n // 4) + cfg.degree_offset)
        agree = invalid = 0
        th = te = 0.0
        methods = Counter()
        for seed in range(cfg.per_n):
            g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, n, seed=seed, delta_min=floor))
            t0 = time.perf_counter()
            res = heuristic_partition(g, pc, seed=seed)
            th += time.perf_counter() - t0
            t0 = time.perf_counter()
            truth = exact_partition(g) is not None
            te += time.perf_counter() - t0
            methods[res.method] += 1
            agree += (res.partition is not None) == truth
            invalid += res.partition is not None and not verify_partition(g, res.partition)
        print(f"{n:>3} {agree:>3}/{cfg.per_n:<2} {invalid:>7} {th:>7.2f} {te:>7.2f}  {dict(methods)}")


if __name__ == "__main__":
    main()
