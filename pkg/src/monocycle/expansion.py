"""Neighborhood cascades and short-path connectivity counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import _kernels
from .exact import CapacityError, PreconditionError
from .graph import Color, SimpleGraph, bits, from_mask, to_mask
from .robust import as_view, frac

MAX_CONNECTOR = 4
KERNEL_N = 62


@dataclass(frozen=True)
class Cascade:
    root: int
    layers: tuple[tuple[int, ...], ...]
    threshold: Fraction
    spanning: bool

    @property
    def k(self) -> int:
        return len(self.layers)

    def to_json_obj(self) -> dict:
        return {"root": self.root, "k": self.k, "layers": [list(l) for l in self.layers],
                "threshold": str(self.threshold), "spanning": self.spanning}


def cascade_violations(g: SimpleGraph, c: Cascade) -> list[str]:
    """Every way the record fails the layered-floor definition (empty if valid)."""
    out = []
    masks = [to_mask(l) for l in c.layers]
    if not masks or masks[0] != g.adj[c.root]:
        out.append("first layer is not N(root)")
    seen = 1 << c.root
    for i, m in enumerate(masks):
        if m & seen:
            out.append(f"layer {i + 1} overlaps earlier layers or the root")
        seen |= m
    for i in range(1, len(masks)):
        for v in bits(masks[i]):
            if g.degree(v, masks[i - 1]) < c.threshold:
                out.append(f"vertex {v} in layer {i + 1} has too few neighbours in layer {i}")
    if c.spanning and seen != g.full:
        out.append("marked spanning but does not cover V")
    return out


def neighborhood_cascade(g, x: int, alpha, ambient_n: int | None = None,
                         color: Color | None = None) -> Cascade:
    """Grow attachment layers from ``x`` and rebalance them into a cascade."""
    view = as_view(g, color)
    n = view.n if ambient_n is None else ambient_n
    a2n = frac(alpha) ** 2 * n
    layers = [view.adj[x]]
    covered = (1 << x) | layers[0]
    stalled = False
    while covered != view.full:
        nxt = to_mask(v for v in bits(view.full & ~covered) if view.degree(v, covered) >= a2n)
        if not nxt:
            stalled = True
            break
        layers.append(nxt)
        covered |= nxt
    k0 = len(layers)
    for i in range(2, k0 + 1):
        h = sum(1 for m in layers[:i] if m)
        thr = a2n / h
        moved = [0] * (i + 1)  # moved[j]: vertices of layer i whose first good layer is j
        for v in bits(layers[i - 1]):
            j = next((j for j in range(1, i) if view.degree(v, layers[j - 1]) >= thr), i - 1)
            moved[j] |= 1 << v
        for j in range(2, i):
            layers[j - 1] |= moved[j - 1]
        layers[i - 1] = moved[i - 1]
    layers = [m for m in layers if m]
    k = len(layers)
    cas = Cascade(x, tuple(from_mask(m) for m in layers), a2n / max(k, 1), False)
    spanning = not stalled and not cascade_violations(view, Cascade(x, cas.layers, cas.threshold, True))
    return Cascade(x, cas.layers, cas.threshold, spanning)


@dataclass(frozen=True)
class ConnectorCounts:
    x: int
    y: int
    counts: dict[int, int]

    def to_json_obj(self) -> dict:
        return {"x": self.x, "y": self.y, "counts": {str(i): c for i, c in self.counts.items()}}


def _adj_array(view: SimpleGraph) -> np.ndarray:
    if view.n > KERNEL_N:
        raise CapacityError(f"path counting supports at most {KERNEL_N} vertices")
    return np.array(view.adj, dtype=np.int64)


def count_connectors(g, x: int, y: int, i_max: int = 2, color: Color | None = None) -> ConnectorCounts:
    """Exact numbers of x..y paths with i internal vertices, i = 1..i_max.

    Paths are counted once each (as sequences oriented from x to y).
    """
    if x == y:
        raise PreconditionError("x and y must differ")
    if i_max > MAX_CONNECTOR:
        raise CapacityError(f"i_max={i_max} exceeds {MAX_CONNECTOR}")
    view = as_view(g, color)
    adj = _adj_array(view)
    return ConnectorCounts(x, y, {i: int(_kernels.count_paths(adj, view.n, x, y, i))
                                  for i in range(1, i_max + 1)})


@dataclass(frozen=True)
class ConnectingReport:
    k: int
    alpha: Fraction
    ambient_n: int
    witness: dict[tuple[int, int], int | None]

    @property
    def passed(self) -> bool:
        return all(w is not None for w in self.witness.values())

    @property
    def failures(self) -> list[tuple[int, int]]:
        return [p for p, w in self.witness.items() if w is None]

    @property
    def max_witness(self) -> int | None:
        vals = [w for w in self.witness.values() if w is not None]
        return max(vals) if vals else None

    def __bool__(self) -> bool:
        return self.passed

    def to_json_obj(self) -> dict:
        return {"k": self.k, "alpha": str(self.alpha), "ambient_n": self.ambient_n,
                "passed": self.passed,
                "pairs": [[x, y, w] for (x, y), w in sorted(self.witness.items())]}


def connecting_certificate(g, k: int, alpha, ambient_n: int | None = None,
                           color: Color | None = None, domain=None) -> ConnectingReport:
    """For each pair, the least i <= k with at least (alpha*n)^i connecting paths."""
    if k > MAX_CONNECTOR:
        raise CapacityError(f"k={k} exceeds {MAX_CONNECTOR}")
    view = as_view(g, color)
    if domain is not None:
        dom = to_mask(domain) if not isinstance(domain, int) else domain
        view = view.induced(dom)
    else:
        dom = view.full
    n = dom.bit_count() if ambient_n is None else ambient_n
    an = frac(alpha) * n
    adj = _adj_array(view)
    witness: dict[tuple[int, int], int | None] = {}
    for x, y in combinations(from_mask(dom), 2):
        w = None
        for i in range(1, k + 1):
            if _kernels.count_paths(adj, view.n, x, y, i) >= an ** i:
                w = i
                break
        witness[(x, y)] = w
    return ConnectingReport(k, frac(alpha), n, witness)


def connecting_k_for(alpha) -> int:
    """floor(1/alpha^2) capped at the exact-counting limit."""
    a = frac(alpha)
    return max(1, min(MAX_CONNECTOR, math.floor(1 / (a * a))))


def shortest_connector(view: SimpleGraph, x: int, y: int, forbidden: int, max_internal: int
                       ) -> tuple[int, ...] | None:
    """Lexicographically least shortest x..y path whose internal vertices avoid ``forbidden``.

    Returns the internal vertices only (possibly empty when xy is an edge
    and ``max_internal`` allows zero).
    """
    allowed = view.full & ~forbidden & ~(1 << x) & ~(1 << y)
    if view.has_edge(x, y):
        return ()
    # BFS distances to y inside allowed, then greedy lexicographic walk from x.
    dist = {y: 0}
    frontier = 1 << y
    reach = 1 << y
    d = 0
    while frontier and d <= max_internal:
        d += 1
        nxt = 0
        for u in bits(frontier):
            nxt |= view.adj[u]
        nxt &= allowed & ~reach
        for u in bits(nxt):
            dist[u] = d
        reach |= nxt
        frontier = nxt
    best = min((dist[u] for u in bits(view.adj[x] & allowed) if u in dist), default=None)
    if best is None or best > max_internal:
        return None
    path = []
    cur, need = x, best
    while need > 0:
        cur = min(u for u in bits(view.adj[cur] & allowed) if dist.get(u) == need and u not in path)
        path.append(cur)
        need -= 1
    return tuple(path)
