"""Degree profile and partition status of the extremal constructions."""

import argparse

from monocycle.exact import exact_partition
from monocycle.extremal import ColorPolicy, FamilyKind, GenSpec, admissible, build_f9, build_family, sharp_degree
from monocycle.graph import degree_report


def rows(n_max: int, seed: int):
    yield "F9", 9, "-", build_f9()
    for kind in (FamilyKind.F1, FamilyKind.F2, FamilyKind.F3):
        for n in range(1, n_max + 1):
            if admissible(kind, n):
                for policy in ColorPolicy:
                    yield kind.value, n, policy.value, build_family(GenSpec(kind, n, seed=seed,
                                                                            arbitrary_color_policy=policy))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    print(f"{'kind':<4} {'n':>3} {'policy':<14} {'delta':>5} {'sharp':>5} {'dR':>3} {'dB':>3}  partition")
    for kind, n, policy, g in rows(a.n_max, a.seed):
        rep = degree_report(g)
        part = exact_partition(g)
        print(f"{kind:<4} {n:>3} {policy:<14} {rep.delta:>5} {sharp_degree(n):>5} {rep.delta_red:>3} "
              f"{rep.delta_blue:>3}  {'none' if part is None else 'found'}")


if __name__ == "__main__":
    main()
