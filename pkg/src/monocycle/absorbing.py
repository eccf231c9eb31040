"""Absorbers: gadget counting, randomized family selection, absorbing-path
assembly and leftover insertion.

A vertex gadget is a tuple ``(v1, ..., v2i)`` that together with a target
``x`` closes the cycle ``x v1 ... v2i x``. A pair gadget is
``(a1, b1, ..., aj, bj, uj, vj, ..., u1, v1)`` closing
``x a1 b1 ... aj bj y vj uj ... v1 u1 x`` in a bipartite host.

Inside the absorbing path each gadget occupies one segment. A segment is
described by a set of *links* (tuple edges and connector paths) that, walked
from the segment's first vertex, traverse it as a single path. Absorbing a
target swaps the tuple edges for the rerouted ones while keeping every
connector, so only that segment changes and its endpoints stay fixed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Hashable, Sequence

import numpy as np

from . import _kernels
from .exact import CapacityError, PreconditionError
from .expansion import KERNEL_N, shortest_connector
from .graph import Color, SimpleGraph, bits, from_mask, to_mask
from .robust import as_view, is_near_bipartite, near_bipartition


class SelectionError(RuntimeError):
    pass


class AssemblyError(RuntimeError):
    pass


class AbsorptionError(RuntimeError):
    pass


# ---------------------------------------------------------------- counting

def count_vertex_absorbers(g, v: int, max_i: int = 2, color: Color | None = None) -> dict[int, int]:
    """Number of (2i+1)-cycles through ``v`` for i = 1..max_i, each cycle once."""
    if max_i > 2:
        raise CapacityError("only cycle lengths 3 and 5 are enumerated")
    view = as_view(g, color)
    if view.n > KERNEL_N:
        raise CapacityError(f"at most {KERNEL_N} vertices")
    adj = np.array(view.adj, dtype=np.int64)
    return {i: int(_kernels.count_odd_cycles_through(adj, view.n, v, 2 * i + 1)) for i in range(1, max_i + 1)}


def _paths_between(view: SimpleGraph, x: int, y: int, internal: int) -> list[int]:
    """Internal-vertex masks of all x..y paths with the given internal count."""
    out = []
    avail = view.full & ~(1 << x) & ~(1 << y)

    def rec(cur: int, used: int, left: int) -> None:
        if left == 0:
            if view.adj[cur] >> y & 1:
                out.append(used)
            return
        for u in bits(view.adj[cur] & avail & ~used):
            rec(u, used | 1 << u, left - 1)

    rec(x, 0, internal)
    return out


def count_pair_absorbers(h, x: int, y: int, sides: tuple[Sequence[int], Sequence[int]] | None = None,
                         max_j: int = 1, color: Color | None = None) -> dict[int, int]:
    """Number of (4j+2)-cycles in the bipartite host through x and y with 2j
    vertices strictly between them on both arcs."""
    view = as_view(h, color)
    if sides is not None:
        xs, ys = to_mask(sides[0]), to_mask(sides[1])
        if (xs >> x & 1) == (xs >> y & 1):
            raise PreconditionError("x and y must lie on opposite sides")
        view = view.bipartite(xs, ys)
    if max_j > 2:
        raise CapacityError("max_j is at most 2")
    out = {}
    for j in range(1, max_j + 1):
        masks = _paths_between(view, x, y, 2 * j)
        ordered = sum(1 for a in masks for b in masks if not a & b)
        out[j] = ordered // 2
    return out


# ---------------------------------------------------------------- universes

@dataclass
class TupleSpace:
    """An indexable collection of candidate tuples of one arity.

    ``decode(i)`` returns the i-th tuple or None when index i does not encode
    a valid gadget (lazy spaces over large products).
    """

    arity: int
    size: int
    decode: Callable[[int], tuple[int, ...] | None]

    @classmethod
    def from_list(cls, arity: int, tuples: Sequence[tuple[int, ...]]) -> "TupleSpace":
        tuples = list(tuples)
        return cls(arity, len(tuples), tuples.__getitem__)

    def __iter__(self):
        for i in range(self.size):
            t = self.decode(i)
            if t is not None:
                yield t


@dataclass
class Universe:
    spaces: list[TupleSpace]
    targets: list[Hashable]
    absorbs: Callable[[tuple[int, ...], Hashable], bool]
    target_vertices: Callable[[Hashable], tuple[int, ...]] = lambda t: (t,) if isinstance(t, int) else tuple(t)


def vertex_gadget_absorbs(view: SimpleGraph) -> Callable[[tuple[int, ...], int], bool]:
    def absorbs(t: tuple[int, ...], x: int) -> bool:
        if x in t:
            return False
        a = view.adj[x]
        return bool(a >> t[0] & 1 and a >> t[-1] & 1)
    return absorbs


def pair_gadget_absorbs(view: SimpleGraph) -> Callable[[tuple[int, ...], tuple[int, int]], bool]:
    def absorbs(t: tuple[int, ...], pair: tuple[int, int]) -> bool:
        x, y = pair
        if x in t or y in t:
            return False
        j = len(t) // 4
        a1, bj, vj, u1 = t[0], t[2 * j - 1], t[2 * j + 1], t[-2]
        ax, ay = view.adj[x], view.adj[y]
        return bool(ax >> a1 & 1 and ax >> u1 & 1 and ay >> bj & 1 and ay >> vj & 1)
    return absorbs


def _is_path(view: SimpleGraph, seq: Sequence[int]) -> bool:
    return len(set(seq)) == len(seq) and all(view.adj[u] >> v & 1 for u, v in zip(seq, seq[1:]))


def vertex_space(view: SimpleGraph, i: int) -> TupleSpace:
    """All 2i-vertex paths (v1..v2i) of the host, lazily indexed."""
    n = view.n
    if i == 1:
        arcs = [(u, v) for u in range(n) for v in bits(view.adj[u])]
        return TupleSpace(2, len(arcs), arcs.__getitem__)
    arity = 2 * i

    def decode(idx: int) -> tuple[int, ...] | None:
        seq = []
        for _ in range(arity):
            idx, r = divmod(idx, n)
            seq.append(r)
        return tuple(seq) if _is_path(view, seq) else None

    return TupleSpace(arity, n ** arity, decode)


def pair_space(view: SimpleGraph, xs: int, ys: int, j: int) -> TupleSpace:
    """Pair gadgets of half-length j: two vertex-disjoint paths a1..bj and
    uj..v1 running Y->X in the bipartite host."""
    if j == 1:
        arcs = [(a, b) for a in bits(ys) for b in bits(view.adj[a] & xs)]
        m = len(arcs)

        def decode(idx: int) -> tuple[int, ...] | None:
            (a1, b1), (u1, v1) = arcs[idx // m], arcs[idx % m]
            if len({a1, b1, u1, v1}) < 4:
                return None
            return (a1, b1, u1, v1)

        return TupleSpace(4, m * m, decode)
    n = view.n
    arity = 4 * j

    def decode_j(idx: int) -> tuple[int, ...] | None:
        seq = []
        for _ in range(arity):
            idx, r = divmod(idx, n)
            seq.append(r)
        if len(set(seq)) != arity:
            return None
        _, a, b, u, v = _pair_named(tuple(seq))
        first = [w for h in range(1, j + 1) for w in (a[h], b[h])]
        second = [w for h in range(1, j + 1) for w in (u[h], v[h])]
        if not (ys >> a[1] & 1 and ys >> u[1] & 1):
            return None
        if not (_is_path(view, first) and _is_path(view, second)):
            return None
        return tuple(seq)

    return TupleSpace(arity, n ** arity, decode_j)


def vertex_universe(view: SimpleGraph, ell: int = 1) -> Universe:
    return Universe([vertex_space(view, i) for i in range(1, ell + 1)], list(range(view.n)),
                    vertex_gadget_absorbs(view))


def pair_universe(view: SimpleGraph, xs: int, ys: int, ell: int = 1) -> Universe:
    h = view.bipartite(xs, ys)
    targets = [(x, y) for x in bits(xs) for y in bits(ys)]
    return Universe([pair_space(h, xs, ys, j) for j in range(1, ell + 1)], targets, pair_gadget_absorbs(h))


# ---------------------------------------------------------------- selection

@dataclass(frozen=True)
class SelectionConfig:
    family_size: int = 5          # expected members per arity before cleanup
    oversample: float = 1.5
    coverage_floor: int = 1
    size_cap: int | None = None   # per-arity cap on selected members
    max_retries: int = 20


@dataclass(frozen=True)
class AbsorberFamily:
    tuples: tuple[tuple[int, ...], ...]
    per_arity: dict[int, int]
    min_coverage: int
    attempts: int

    def vertices(self) -> int:
        return to_mask(v for t in self.tuples for v in t)


def universe_shortfall(universe: Universe, sigma: Sequence[float] | None = None, n: int | None = None
                       ) -> list[Hashable]:
    """Targets absorbed by fewer than sigma_i * n^i tuples of every arity
    (with sigma unset: targets absorbed by nothing)."""
    bad = []
    for t in universe.targets:
        ok = False
        for k, space in enumerate(universe.spaces):
            need = 1 if sigma is None else max(1, math.ceil(sigma[k] * (n or 1) ** space.arity))
            cnt = 0
            for tup in space:
                if universe.absorbs(tup, t):
                    cnt += 1
                    if cnt >= need:
                        ok = True
                        break
            if ok:
                break
        if not ok:
            bad.append(t)
    return bad


def select_absorber_family(universe: Universe, seed: int, config: SelectionConfig = SelectionConfig(),
                           check: bool = True, sigma: Sequence[float] | None = None) -> AbsorberFamily:
    """Random inclusion, conflict deletion, pruning and validation with retries."""
    if check:
        bad = universe_shortfall(universe, sigma)
        if bad:
            raise PreconditionError(f"targets absorbed by no tuple: {bad[:10]}")
    cap = config.size_cap if config.size_cap is not None else 2 * config.family_size
    last = "no attempt"
    for attempt in range(config.max_retries):
        sub = seed * 1_000_003 + attempt
        rng = random.Random(sub)
        nrng = np.random.default_rng(sub)
        drawn: list[tuple[int, ...]] = []
        for space in universe.spaces:
            if space.size == 0:
                continue
            rate = min(1.0, config.family_size * config.oversample / space.size)
            k = int(nrng.binomial(space.size, rate))
            for idx in rng.sample(range(space.size), k):
                t = space.decode(idx)
                if t is not None:
                    drawn.append(t)
        kept, used = [], 0
        for t in drawn:
            m = to_mask(t)
            if m & used:
                continue
            kept.append(t)
            used |= m
        kept = [t for t in kept if any(universe.absorbs(t, x) for x in universe.targets)]
        fam_mask = to_mask(v for t in kept for v in t)
        per_arity: dict[int, int] = {}
        for t in kept:
            per_arity[len(t)] = per_arity.get(len(t), 0) + 1
        if any(c > cap for c in per_arity.values()):
            last = f"per-arity cap {cap} exceeded: {per_arity}"
            continue
        live = [x for x in universe.targets if not to_mask(universe.target_vertices(x)) & fam_mask]
        cover = [sum(1 for t in kept if universe.absorbs(t, x)) for x in live]
        worst = min(cover, default=config.coverage_floor)
        if worst < config.coverage_floor:
            stranded = [x for x, c in zip(live, cover) if c < config.coverage_floor]
            last = f"coverage {worst} < {config.coverage_floor} for {stranded[:5]}"
            continue
        return AbsorberFamily(tuple(kept), per_arity, worst, attempt + 1)
    raise SelectionError(f"selection failed after {config.max_retries} attempts: {last}")


# ---------------------------------------------------------------- gadget links

Link = tuple[int, ...]


def vertex_gadget_plan(t: tuple[int, ...]) -> tuple[int, int, list[tuple[int, int]]]:
    """(first vertex, last vertex, connector endpoint pairs) of a vertex gadget."""
    i = len(t) // 2
    v = (None,) + tuple(t)  # 1-indexed
    if i == 1:
        return v[1], v[2], []
    conns = [(v[2 * j - 1], v[2 * j + 2]) for j in range(1, i - 1)]
    conns.append((v[2 * i - 3], v[2 * i - 1]))
    return v[2], v[2 * i], conns


def vertex_gadget_links(t: tuple[int, ...], connectors: dict[tuple[int, int], Link],
                        x: int | None = None) -> list[Link]:
    i = len(t) // 2
    v = (None,) + tuple(t)
    links: list[Link] = list(connectors.values())
    if x is None:
        links += [(v[2 * j - 1], v[2 * j]) for j in range(1, i + 1)]
    else:
        links += [(v[2 * j], v[2 * j + 1]) for j in range(1, i)]
        links += [(v[1], x, v[2 * i])]
    return links


def _pair_named(t: tuple[int, ...]):
    j = len(t) // 4
    a = {h: t[2 * h - 2] for h in range(1, j + 1)}
    b = {h: t[2 * h - 1] for h in range(1, j + 1)}
    tail = t[2 * j:]  # uj vj ... u1 v1
    u = {j - k: tail[2 * k] for k in range(j)}
    v = {j - k: tail[2 * k + 1] for k in range(j)}
    return j, a, b, u, v


def pair_gadget_plan(t: tuple[int, ...]) -> tuple[int, int, list[tuple[int, int]]]:
    j, a, b, u, v = _pair_named(t)
    if j == 1:
        return a[1], v[1], [(b[1], u[1])]
    if j == 2:
        # the general rule would give a1 three links; one connector u1-a2 replaces a1-a2 and u1-b2
        return b[1], b[2], [(a[1], u[2]), (v[2], v[1]), (u[1], a[2])]
    conns = [(a[1], u[j])]
    conns += [(a[h], b[h + 1]) for h in range(2, j - 1)]
    conns.append((a[j - 1], a[j]))
    conns += [(v[h], u[h - 1]) for h in range(3, j + 1)]
    conns += [(v[2], v[1]), (u[1], b[2])]
    return b[1], b[j], conns


def pair_gadget_links(t: tuple[int, ...], connectors: dict[tuple[int, int], Link],
                      pair: tuple[int, int] | None = None) -> list[Link]:
    j, a, b, u, v = _pair_named(t)
    links: list[Link] = list(connectors.values())
    if pair is None:
        links += [(a[h], b[h]) for h in range(1, j + 1)]
        links += [(v[h], u[h]) for h in range(1, j + 1)]
    else:
        x, y = pair
        links += [(b[h], a[h + 1]) for h in range(1, j)]
        links += [(u[h], v[h - 1]) for h in range(2, j + 1)]
        links += [(a[1], x, u[1]), (v[j], y, b[j])]
    return links


def walk_links(links: Sequence[Link], start: int) -> list[int]:
    """Concatenate links into one path from ``start``; raise if they do not form one."""
    ends: dict[int, list[int]] = {}
    for k, l in enumerate(links):
        ends.setdefault(l[0], []).append(k)
        ends.setdefault(l[-1], []).append(k)
    used = [False] * len(links)
    path = [start]
    cur = start
    while True:
        nxt = [k for k in ends.get(cur, []) if not used[k]]
        if not nxt:
            break
        if len(nxt) > 1:
            raise AssemblyError(f"links branch at {cur}")
        k = nxt[0]
        used[k] = True
        seq = links[k] if links[k][0] == cur else tuple(reversed(links[k]))
        path.extend(seq[1:])
        cur = seq[-1]
    if not all(used):
        raise AssemblyError("links do not form a single path")
    if len(set(path)) != len(path):
        raise AssemblyError("links revisit a vertex")
    return path


# ---------------------------------------------------------------- absorbing path

@dataclass(frozen=True)
class GadgetRecord:
    kind: str                       # "vertex" | "pair"
    vertices: tuple[int, ...]
    start: int                      # index of the segment's first vertex in the path
    end: int                        # index of its last vertex (inclusive)
    connectors: dict                # (p, q) -> full connector path p..q

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "start": self.start, "end": self.end,
                "connectors": [list(c) for c in self.connectors.values()]}


@dataclass(frozen=True)
class AbsorbingPath:
    path: tuple[int, ...]
    registry: tuple[GadgetRecord, ...]
    variant: str
    side_sets: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    coverage_floor: int = 0

    def to_json_obj(self) -> dict:
        return {"path": list(self.path), "variant": self.variant,
                "registry": [r.to_json_obj() for r in self.registry],
                "side_sets": None if self.side_sets is None else [list(s) for s in self.side_sets],
                "bipartition": None if self.bipartition is None else [list(s) for s in self.bipartition],
                "coverage_floor": self.coverage_floor}


@dataclass(frozen=True)
class AbsorbingParams:
    ell: int = 1                 # largest gadget half-length in use
    gadgets: int | None = None   # expected family size; default n // 6
    coverage_floor: int | None = None  # also the leftover budget; default 3 (vertex) or 1 (pair)
    connector_len: int = 3       # max internal vertices per connector
    max_retries: int = 20
    reservoir_s1: int = 1
    reservoir_t1: int = 3


def _host(g, color, variant: str, bipartition, eta, alpha, seed):
    view = as_view(g, color)
    if variant == "auto":
        from fractions import Fraction
        variant = "pair" if is_near_bipartite(view, Fraction(str(alpha)) ** 2, seed=seed) else "vertex"
    if variant == "vertex":
        return view, "vertex", None
    if bipartition is None:
        b = near_bipartition(view, eta, alpha, seed=seed)
        if b is None:
            raise PreconditionError("pair variant needs a bipartition (host is not near-bipartite)")
        xs, ys = b.masks
    else:
        xs, ys = to_mask(bipartition[0]), to_mask(bipartition[1])
    if popcount_mask(xs) > popcount_mask(ys):
        xs, ys = ys, xs
    return view.bipartite(xs, ys), "pair", (xs, ys)


def popcount_mask(m: int) -> int:
    return m.bit_count()


def build_absorbing_path(g, params: AbsorbingParams = AbsorbingParams(), seed: int = 0,
                         color: Color | None = None, variant: str = "vertex",
                         bipartition: tuple[Sequence[int], Sequence[int]] | None = None,
                         eta: float = 0.2, alpha: float = 0.05,
                         family: AbsorberFamily | None = None) -> AbsorbingPath:
    """Select a disjoint absorber family and chain its gadgets into one path."""
    host, variant, sides = _host(g, color, variant, bipartition, eta, alpha, seed)
    n = host.n
    if variant == "vertex":
        universe = vertex_universe(host, params.ell)
        floor = 3
    else:
        universe = pair_universe(host, sides[0], sides[1], params.ell)
        floor = 1
    if params.coverage_floor is not None:
        floor = params.coverage_floor
    size = params.gadgets if params.gadgets is not None else max(1, n // 6)
    last_err: Exception | None = None
    for attempt in range(params.max_retries):
        sub = seed * 7919 + attempt
        if family is None or attempt > 0:
            if size == 0:
                fam = AbsorberFamily((), {}, 0, 0)
            else:
                try:
                    fam = select_absorber_family(
                        universe, sub,
                        SelectionConfig(family_size=size, coverage_floor=floor,
                                        max_retries=params.max_retries),
                        check=False)
                except SelectionError as exc:
                    last_err = exc
                    continue
        else:
            fam = family
        try:
            ap = assemble(host, fam, variant, params.connector_len)
        except AssemblyError as exc:
            last_err = exc
            continue
        ap = replace(ap, coverage_floor=floor)
        if variant == "pair":
            outside = host.full & ~to_mask(ap.path)
            s1 = from_mask(outside & sides[0])[:params.reservoir_s1]
            t1 = from_mask(outside & sides[1])[:params.reservoir_t1]
            ap = replace(ap, side_sets=(s1, t1), bipartition=(from_mask(sides[0]), from_mask(sides[1])))
        return ap
    raise AssemblyError(f"absorbing path assembly failed after {params.max_retries} attempts: {last_err}")


def assemble(host: SimpleGraph, fam: AbsorberFamily, variant: str, connector_len: int) -> AbsorbingPath:
    """Lay out gadgets in family order, joining them with shortest connectors."""
    reserved = fam.vertices()
    used = reserved
    path: list[int] = []
    records: list[GadgetRecord] = []
    plan_fn = vertex_gadget_plan if variant == "vertex" else pair_gadget_plan
    link_fn = vertex_gadget_links if variant == "vertex" else pair_gadget_links
    for s, t in enumerate(fam.tuples):
        first, last, conn_ends = plan_fn(t)
        connectors = {}
        for p, q in conn_ends:
            inner = shortest_connector(host, p, q, used, connector_len)
            if inner is None:
                raise AssemblyError(f"no connector {p}-{q} inside gadget {s}")
            connectors[(p, q)] = (p,) + inner + (q,)
            used |= to_mask(inner)
        segment = walk_links(link_fn(t, connectors), first)
        if segment[-1] != last:
            raise AssemblyError(f"gadget {s} segment ends at {segment[-1]}, expected {last}")
        if path:
            inner = shortest_connector(host, path[-1], first, used, connector_len)
            if inner is None:
                raise AssemblyError(f"no connector into gadget {s}")
            path.extend(inner)
            used |= to_mask(inner)
        start = len(path)
        path.extend(segment)
        records.append(GadgetRecord(variant, t, start, len(path) - 1, connectors))
    if not _is_path(host, path):
        raise AssemblyError("assembled sequence is not a path")
    return AbsorbingPath(tuple(path), tuple(records), variant)


def check_path(view: SimpleGraph, seq: Sequence[int]) -> bool:
    return _is_path(view, seq)


def _match(items: list, gadgets: list[GadgetRecord], can: Callable[[object, GadgetRecord], bool]) -> dict:
    """Augmenting-path bipartite matching; items in order, gadgets by index."""
    owner: dict[int, int] = {}

    def attempt(k: int, seen: set[int]) -> bool:
        for gi, rec in enumerate(gadgets):
            if gi in seen or not can(items[k], rec):
                continue
            seen.add(gi)
            if gi not in owner or attempt(owner[gi], seen):
                owner[gi] = k
                return True
        return False

    for k in range(len(items)):
        attempt(k, set())
    return {k: gi for gi, k in owner.items()}


def absorb(g, ap: AbsorbingPath, W: Sequence[int], color: Color | None = None) -> tuple[int, ...]:
    """Insert every vertex of W into the absorbing path without moving its ends."""
    view = as_view(g, color)
    W = sorted(set(W))
    if not W:
        return ap.path
    if set(W) & set(ap.path):
        raise PreconditionError("W must avoid the absorbing path")
    gadgets = list(ap.registry)
    if ap.variant == "vertex":
        absorbs = vertex_gadget_absorbs(view)
        items: list = W
        can = lambda x, rec: absorbs(rec.vertices, x)
    else:
        xs = set(ap.bipartition[0])
        wx = [w for w in W if w in xs]
        wy = [w for w in W if w not in xs]
        if len(wx) != len(wy):
            raise PreconditionError("pair absorption needs |W cap X| = |W cap Y|")
        h = view.bipartite(to_mask(ap.bipartition[0]), to_mask(ap.bipartition[1]))
        absorbs = pair_gadget_absorbs(h)
        items = list(zip(wx, wy))
        can = lambda p, rec: absorbs(rec.vertices, p)
    matching = _match(items, gadgets, can)
    stranded = [items[k] for k in range(len(items)) if k not in matching]
    if stranded:
        raise AbsorptionError(f"no free gadget for {stranded}")
    new_segments = {}
    for k, gi in matching.items():
        rec = gadgets[gi]
        if ap.variant == "vertex":
            links = vertex_gadget_links(rec.vertices, rec.connectors, items[k])
        else:
            links = pair_gadget_links(rec.vertices, rec.connectors, items[k])
        seg = walk_links(links, ap.path[rec.start])
        if seg[-1] != ap.path[rec.end]:
            raise AbsorptionError(f"reroute of gadget {gi} moved its endpoint")
        new_segments[gi] = seg
    out: list[int] = []
    pos = 0
    for gi, rec in enumerate(gadgets):
        if gi in new_segments:
            out.extend(ap.path[pos:rec.start])
            out.extend(new_segments[gi])
            pos = rec.end + 1
    out.extend(ap.path[pos:])
    return tuple(out)
