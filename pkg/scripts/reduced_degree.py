"""Minimum degree of reduced graphs against the bound (c - 2d)k for random equitable partitions."""

import argparse
import random
from fractions import Fraction

from monocycle.extremal import FamilyKind, GenSpec, random_instance
from monocycle.graph import degree_report
from monocycle.regularity import random_equitable_partition, reduced_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=30)
    ap.add_argument("--d", type=Fraction, default=Fraction(1, 10))
    ap.add_argument("--eps", type=Fraction, default=Fraction(1, 5))
    ap.add_argument("--check-regularity", action="store_true", help="also brute-force regularity of each pair")
    a = ap.parse_args()
    print(f"{'seed':>4} {'n':>3} {'size':>4} {'k':>3} {'c':>6} {'delta':>5} {'bound':>6} {'slack':>6}")
    for seed in range(a.runs):
        rng = random.Random(seed)
        n, size = rng.randint(24, 60), rng.choice([3, 4, 5, 6])
        g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, n, seed=seed, delta_min=rng.randint(n // 2, n - 1),
                                    keep_prob=0.5))
        c = Fraction(degree_report(g).delta, n)
        rg = reduced_graph(g, random_equitable_partition(n, size, seed), a.eps, a.d,
                           check_regularity=a.check_regularity)
        bound = (c - 2 * a.d) * rg.k
        print(f"{seed:>4} {n:>3} {size:>4} {rg.k:>3} {float(c):>6.3f} {rg.min_degree():>5} {float(bound):>6.2f} "
              f"{float(rg.min_degree() - bound):>6.2f}")


if __name__ == "__main__":
    main()
