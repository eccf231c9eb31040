"""Pair densities, brute-force epsilon-regularity and cluster-level reduced graphs.

No regular partition is ever constructed: callers supply equitable cluster
partitions (or draw random ones) and the routines here measure them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import CapacityError, PreconditionError
from .graph import Color, ColoredGraph, SimpleGraph, from_mask, to_mask
from .robust import frac

REGULARITY_CAP = 14
REDUCED_CHECK_CAP = 10  # cluster size up to which reduced_graph reports regularity


def _view(g, color: Color | None) -> SimpleGraph:
    if isinstance(g, ColoredGraph):
        return g.view(color)
    return g


def _mask(vs) -> int:
    return vs if isinstance(vs, int) else to_mask(vs)


def _check_pair(a: int, b: int) -> None:
    if not a or not b:
        raise PreconditionError("both sides must be nonempty")
    if a & b:
        raise PreconditionError("sides overlap")


def pair_density(g, a, b, color: Color | None = None) -> Fraction:
    """e(A, B) / (|A||B|) as an exact fraction, in one color or in total."""
    am, bm = _mask(a), _mask(b)
    _check_pair(am, bm)
    v = _view(g, color)
    return Fraction(v.crossing(am, bm), am.bit_count() * bm.bit_count())


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    deviation: Fraction | None
    conclusive: bool
    subsets_checked: int

    def __bool__(self) -> bool:
        return self.regular

    def to_json_obj(self) -> dict:
        return {"regular": self.regular, "conclusive": self.conclusive,
                "witness": None if self.witness is None else [list(self.witness[0]), list(self.witness[1])],
                "deviation": None if self.deviation is None else str(self.deviation),
                "subsets_checked": self.subsets_checked}


def _scan(view: SimpleGraph, a_list, b_list, eps: Fraction, subsets):
    """Worst sub-pair over the given A' masks; B' ranges over every size via sorted degrees.

    For a fixed A' and |B'| = s the extreme densities come from the s vertices
    of B with the most (or fewest) neighbours in A', so only those are tested.
    """
    A, B = len(a_list), len(b_list)
    E = view.crossing(to_mask(a_list), to_mask(b_list))
    min_a = max(1, -(-eps.numerator * A // eps.denominator))
    min_b = max(1, -(-eps.numerator * B // eps.denominator))
    best = None  # (deviation, |A'||B'|, -a_mask, -b_mask)
    count = 0
    for am in subsets:
        sa = am.bit_count()
        if sa < min_a:
            continue
        count += 1
        low = sorted((view.degree(v, am), v) for v in b_list)
        high = sorted(low, key=lambda t: (-t[0], t[1]))
        for sb in range(min_b, B + 1):
            for pick in (low[:sb], high[:sb]):
                e = sum(t[0] for t in pick)
                gap = abs(e * A * B - E * sa * sb) * eps.denominator
                if gap >= eps.numerator * sa * sb * A * B:
                    dev = abs(Fraction(e, sa * sb) - Fraction(E, A * B))
                    bm = to_mask(t[1] for t in pick)
                    key = (dev, sa * sb, -am, -bm)
                    if best is None or key > best:
                        best = key
    return best, count


def epsilon_regular_check(g, a, b, eps, color: Color | None = None, mode: str = "exact",
                          seed: int = 0, samples: int = 2000) -> RegularityVerdict:
    """Search for sub-pairs (|A'| >= eps|A|, |B'| >= eps|B|) whose density deviates by at least eps.

    The reported witness has the largest deviation, then the largest size.
    ``mode="sampled"`` draws random A' instead of enumerating them and is only
    conclusive when it finds a witness.
    """
    am, bm = _mask(a), _mask(b)
    _check_pair(am, bm)
    eps = frac(eps)
    view = _view(g, color)
    a_list = from_mask(am)
    b_list = from_mask(bm)
    if mode == "exact":
        if len(a_list) > REGULARITY_CAP or len(b_list) > REGULARITY_CAP:
            raise CapacityError(f"exact regularity check supports sides up to {REGULARITY_CAP}")
        subsets = _all_submasks(a_list)
    elif mode == "sampled":
        rng = random.Random(seed)
        subsets = [to_mask(v for v in a_list if rng.random() < 0.5) for _ in range(samples)]
        subsets.append(am)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    best, count = _scan(view, a_list, b_list, eps, subsets)
    if best is None:
        return RegularityVerdict(True, None, None, mode == "exact", count)
    dev, _, na, nb = best
    return RegularityVerdict(False, (from_mask(-na), from_mask(-nb)), dev, True, count)


def _all_submasks(verts) -> list[int]:
    out = []
    for bitsel in range(1, 1 << len(verts)):
        out.append(to_mask(v for i, v in enumerate(verts) if bitsel >> i & 1))
    return out


# ------------------------------------------------------------ cluster partitions

@dataclass(frozen=True)
class ClusterPartition:
    v0: tuple[int, ...]
    clusters: tuple[tuple[int, ...], ...]
    tags: tuple[int, ...] | None = None  # index of the initial part holding each cluster

    @property
    def k(self) -> int:
        return len(self.clusters)

    def validate(self, n: int, initial=None) -> None:
        sizes = {len(c) for c in self.clusters}
        if len(sizes) > 1:
            raise PreconditionError(f"clusters have unequal sizes {sorted(sizes)}")
        if 0 in sizes:
            raise PreconditionError("empty cluster")
        seen = 0
        for part in (self.v0, *self.clusters):
            m = to_mask(part)
            if m & seen or m.bit_count() != len(part):
                raise PreconditionError("clusters overlap or repeat vertices")
            seen |= m
        if seen != (1 << n) - 1:
            raise PreconditionError("partition does not cover V")
        if self.tags is not None:
            if len(self.tags) != self.k:
                raise PreconditionError("one tag per cluster required")
            if initial is not None:
                parts = [to_mask(q) for q in initial]
                for c, t in zip(self.clusters, self.tags):
                    if not 0 <= t < len(parts) or to_mask(c) & ~parts[t]:
                        raise PreconditionError(f"cluster {list(c)} is not inside initial part {t}")

    def to_json_obj(self) -> dict:
        out: dict = {"v0": list(self.v0), "clusters": [list(c) for c in self.clusters]}
        if self.tags is not None:
            out["tags"] = list(self.tags)
        return out

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ClusterPartition":
        tags = obj.get("tags")
        return cls(tuple(obj.get("v0", ())), tuple(tuple(c) for c in obj["clusters"]),
                   None if tags is None else tuple(tags))


def random_equitable_partition(n: int, cluster_size: int, seed: int, initial=None) -> ClusterPartition:
    """Shuffle each initial part and cut it into clusters; remainders go to V0."""
    if cluster_size < 1:
        raise PreconditionError("cluster size must be positive")
    rng = random.Random(seed)
    parts = [list(range(n))] if initial is None else [sorted(q) for q in initial]
    clusters, tags, v0 = [], [], []
    for j, part in enumerate(parts):
        rng.shuffle(part)
        full = len(part) // cluster_size * cluster_size
        for s in range(0, full, cluster_size):
            clusters.append(tuple(sorted(part[s:s + cluster_size])))
            tags.append(j)
        v0.extend(part[full:])
    return ClusterPartition(tuple(sorted(v0)), tuple(clusters), tuple(tags) if initial is not None else None)


@dataclass(frozen=True)
class ReducedGraph:
    k: int
    eps: Fraction
    d: Fraction
    densities: dict[tuple[int, int], tuple[Fraction, Fraction, Fraction]]
    labels: dict[tuple[int, int], str]
    regular: dict[tuple[int, int], tuple[bool | None, bool | None]] = field(default_factory=dict)

    def colored(self) -> ColoredGraph:
        return ColoredGraph.from_edges(self.k, [(i, j, lab) for (i, j), lab in sorted(self.labels.items())])

    def min_degree(self) -> int:
        if self.k == 0:
            return 0
        deg = [0] * self.k
        for i, j in self.labels:
            deg[i] += 1
            deg[j] += 1
        return min(deg)

    def to_json_obj(self) -> dict:
        pairs = []
        for (i, j), (dr, db, dt) in sorted(self.densities.items()):
            rec = {"i": i, "j": j, "red": str(dr), "blue": str(db), "total": str(dt),
                   "label": self.labels.get((i, j))}
            if (i, j) in self.regular:
                rr, rb = self.regular[(i, j)]
                rec["regular_red"], rec["regular_blue"] = rr, rb
            pairs.append(rec)
        return {"k": self.k, "eps": str(self.eps), "d": str(self.d), "pairs": pairs}


def reduced_graph(g: ColoredGraph, partition: ClusterPartition, eps, d,
                  check_regularity: bool = True, initial=None) -> ReducedGraph:
    """Clusters become vertices; an edge needs total density >= 2d and gets color c when
    the color-c density is at least d."""
    partition.validate(g.n, initial)
    eps, d = frac(eps), frac(d)
    masks = [to_mask(c) for c in partition.clusters]
    dens, labels, reg = {}, {}, {}
    small = all(len(c) <= REDUCED_CHECK_CAP for c in partition.clusters)
    for i, j in combinations(range(partition.k), 2):
        dr = pair_density(g, masks[i], masks[j], Color.RED)
        db = pair_density(g, masks[i], masks[j], Color.BLUE)
        dt = pair_density(g, masks[i], masks[j])
        dens[(i, j)] = (dr, db, dt)
        if dt >= 2 * d:
            lab = ("R" if dr >= d else "") + ("B" if db >= d else "")
            labels[(i, j)] = lab
        if check_regularity and small:
            reg[(i, j)] = tuple(epsilon_regular_check(g, masks[i], masks[j], eps, c).regular
                                for c in (Color.RED, Color.BLUE))
    return ReducedGraph(partition.k, eps, d, dens, labels, reg)


def clusters_inside(partition: ClusterPartition, x) -> tuple[int, ...]:
    xm = _mask(x)
    return tuple(i for i, c in enumerate(partition.clusters) if not to_mask(c) & ~xm)


def reduced_connected(rg: ReducedGraph, clusters, color: Color) -> bool:
    """Whether the color-c reduced graph induced on the given clusters is connected."""
    view = rg.colored().view(color)
    return view.is_connected(to_mask(clusters))
