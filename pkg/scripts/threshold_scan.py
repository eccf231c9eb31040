"""How often random dense 2-colored graphs split into a red and a blue cycle,
as the minimum degree moves around ceil((3n-3)/4) - 1.

    python scripts/threshold_scan.py --n 8 14 --offsets -2 -1 0 1 2 --count 40
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

from monocycle.exact import exact_partition
from monocycle.extremal import FamilyKind, GenSpec, random_instance, sharp_degree


@dataclass
class ScanConfig:
    n_lo: int = 8
    n_hi: int = 14
    offsets: list[int] = field(default_factory=lambda: [-2, -1, 0, 1, 2])
    count: int = 40
    keep_prob: float = 0.2   # low keep probability pushes degrees down to the floor
    seed_base: int = 0


def scan(cfg: ScanConfig):
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        for off in cfg.offsets:
            floor = sharp_degree(n) + off
            if not 0 <= floor <= n - 1:
                continue
            hits = 0
            for i in range(cfg.count):
                g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, n, seed=cfg.seed_base + 1000 * n + i,
                                            delta_min=floor, keep_prob=cfg.keep_prob))
                hits += exact_partition(g) is not None
            yield {"n": n, "offset": off, "delta_min": floor, "count": cfg.count, "partitionable": hits}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", nargs=2, type=int, default=[8, 14])
    ap.add_argument("--offsets", nargs="+", type=int, default=[-2, -1, 0, 1, 2])
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--keep-prob", type=float, default=0.2)
    ap.add_argument("--json", action="store_true", help="emit JSON lines instead of a table")
    a = ap.parse_args()
    cfg = ScanConfig(a.n[0], a.n[1], a.offsets, a.count, a.keep_prob)
    if not a.json:
        print(f"config: {asdict(cfg)}")
        print(f"{'n':>3} {'off':>4} {'delta':>5} {'partitionable':>14}")
    for row in scan(cfg):
        if a.json:
            print(json.dumps(row))
        else:
            print(f"{row['n']:>3} {row['offset']:>4} {row['delta_min']:>5} {row['partitionable']:>6}/{row['count']}")


if __name__ == "__main__":
    main()
