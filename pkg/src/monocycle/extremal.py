"""Sharpness constructions (the 9-vertex graph and three infinite families) and
seeded random dense instances."""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from itertools import combinations

from .graph import ColoredGraph, degree_report


class GenerationError(ValueError):
    pass


class FamilyKind(str, enum.Enum):
    F9 = "F9"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    RANDOM_DENSE = "RandomDense"


class ColorPolicy(str, enum.Enum):
    ALL_RED = "all-red"
    ALL_BLUE = "all-blue"
    SEEDED = "seeded-random"


@dataclass(frozen=True)
class GenSpec:
    kind: FamilyKind
    n: int
    seed: int = 0
    delta_min: int = 0
    arbitrary_color_policy: ColorPolicy = ColorPolicy.ALL_RED
    red_bias: float = 0.5
    keep_prob: float = 0.5
    max_retries: int = 50


def sharp_degree(n: int) -> int:
    """ceil((3n-3)/4) - 1, the minimum degree every family attains."""
    return -(-(3 * n - 3) // 4) - 1


# vertex order x1 x2 x3 y1 y2 z1 z2 z3 z4
F9_NAMES = ("x1", "x2", "x3", "y1", "y2", "z1", "z2", "z3", "z4")


def build_f9() -> ColoredGraph:
    ix = {name: i for i, name in enumerate(F9_NAMES)}
    missing = {frozenset(p) for p in (("z1", "z4"), ("z3", "z2"), ("x1", "y2"), ("x2", "y1"))}
    red_pairs = {frozenset(p) for p in (
        ("y1", "y2"), ("x3", "y1"), ("x3", "y2"), ("z1", "z3"), ("z2", "z4"))}
    edges = []
    for a, b in combinations(F9_NAMES, 2):
        pair = frozenset((a, b))
        if pair in missing:
            continue
        kinds = {a[0], b[0]}
        if kinds == {"x", "z"}:
            lab = "R"
        elif kinds == {"y", "z"}:
            lab = "B"
        elif kinds == {"x"}:
            lab = "B"
        else:
            lab = "R" if pair in red_pairs else "B"
        edges.append((ix[a], ix[b], lab))
    return ColoredGraph.from_edges(9, edges)


def family_parts(kind: FamilyKind, n: int) -> dict[str, range]:
    """Canonical part sizes as consecutive index ranges."""
    kind = FamilyKind(kind)
    if kind in (FamilyKind.F1, FamilyKind.F2):
        if n < 8:
            raise GenerationError(f"{kind.value} needs n >= 8, got {n}")
        q, r = divmod(n, 4)
        order = ["X1", "Y2", "X2", "Y1"]
        sizes = {name: q + (1 if i < r else 0) for i, name in enumerate(order)}
        layout = ["X1", "X2", "Y1", "Y2"]
    elif kind is FamilyKind.F3:
        if n < 6:
            raise GenerationError(f"F3 needs n >= 6, got {n}")
        if n % 4 == 0:
            raise GenerationError("F3 does not attain the sharp degree when n is divisible by 4")
        z = (n - 1) // 2
        rest = n - z
        sizes = {"X": rest - rest // 2, "Y": rest // 2, "Z": z}
        if not (1 <= sizes["X"] + sizes["Y"] - z <= 2) or min(sizes.values()) < 1:
            raise GenerationError(f"F3 part sizes infeasible for n={n}")
        layout = ["X", "Y", "Z"]
    else:
        raise GenerationError(f"{kind} is not a parametrized family")
    parts, start = {}, 0
    for name in layout:
        parts[name] = range(start, start + sizes[name])
        start += sizes[name]
    return parts


def build_family(spec: GenSpec) -> ColoredGraph:
    kind = FamilyKind(spec.kind)
    if kind is FamilyKind.F9:
        return build_f9()
    if kind is FamilyKind.RANDOM_DENSE:
        return random_instance(spec)
    n = spec.n
    parts = family_parts(kind, n)
    where = {v: name for name, r in parts.items() for v in r}
    rng = random.Random(spec.seed)
    policy = ColorPolicy(spec.arbitrary_color_policy)

    def free() -> str:
        if policy is ColorPolicy.ALL_RED:
            return "R"
        if policy is ColorPolicy.ALL_BLUE:
            return "B"
        return "R" if rng.random() < 0.5 else "B"

    edges = []
    for u, v in combinations(range(n), 2):
        lab = _family_label(kind, where[u], where[v])
        if lab is None:
            continue
        edges.append((u, v, free() if lab == "*" else lab))
    g = ColoredGraph.from_edges(n, edges)
    got = degree_report(g).delta
    if got != sharp_degree(n):
        raise GenerationError(f"{kind.value} at n={n} has min degree {got}, not {sharp_degree(n)}")
    return g


def _family_label(kind: FamilyKind, a: str, b: str) -> str | None:
    """'R', 'B', '*' (free) or None (non-edge) for a pair of part names."""
    pair = frozenset((a, b))
    if kind is FamilyKind.F3:
        if pair == {"X", "Y"}:
            return None
        if a == b:
            return {"X": "B", "Y": "R", "Z": "*"}[a]
        return "R" if pair == {"X", "Z"} else "B"
    if pair == {"X1", "Y2"}:
        return None
    if kind is FamilyKind.F1 and pair == {"X2", "Y1"}:
        return None
    if a == b:
        if kind is FamilyKind.F2 and a in ("X1", "Y2"):
            return "B"
        return "*"
    if pair in ({"X1", "X2"}, {"Y1", "Y2"}):
        return "B"
    # remaining cross pairs: X1-Y1, X2-Y2, and in F2 also X2-Y1
    return "R"


def random_instance(spec: GenSpec) -> ColoredGraph:
    """Seeded dense instance with minimum degree at least ``delta_min``.

    Starts from K_n and visits the pairs in a seeded random order, dropping
    each with probability ``1 - keep_prob`` whenever both ends stay above the
    floor. Colors are independent coins with P(red) = ``red_bias``.
    """
    n, floor = spec.n, spec.delta_min
    if n < 0:
        raise GenerationError("negative n")
    if floor > max(n - 1, 0):
        raise GenerationError(f"delta_min={floor} infeasible for n={n} (after 0 retries)")
    rng = random.Random(spec.seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [n - 1] * n
    kept = []
    for u, v in pairs:
        if deg[u] > floor and deg[v] > floor and rng.random() >= spec.keep_prob:
            deg[u] -= 1
            deg[v] -= 1
            continue
        kept.append((u, v))
    kept.sort()
    edges = [(u, v, "R" if rng.random() < spec.red_bias else "B") for u, v in kept]
    g = ColoredGraph.from_edges(n, edges)
    assert n == 0 or degree_report(g).delta >= floor
    return g


def random_coloring(n: int, seed: int, red_bias: float = 0.5) -> ColoredGraph:
    """Seeded 2-coloring of K_n."""
    return random_instance(GenSpec(FamilyKind.RANDOM_DENSE, n, seed=seed, delta_min=max(n - 1, 0),
                                   red_bias=red_bias))


def admissible(kind: FamilyKind, n: int) -> bool:
    try:
        family_parts(kind, n)
    except GenerationError:
        return False
    return True


def coloring_from_index(n: int, index: int) -> ColoredGraph:
    """The ``index``-th 2-coloring of K_n (bit k of index colors pair k blue)."""
    pairs = list(combinations(range(n), 2))
    return ColoredGraph.from_edges(n, [(u, v, "B" if index >> k & 1 else "R") for k, (u, v) in enumerate(pairs)])


def num_colorings(n: int) -> int:
    return 1 << math.comb(n, 2)
