"""Exact red-cycle/blue-cycle partition oracle, verifier and path-pair decomposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Color, ColoredGraph, SimpleGraph, bits, from_mask, lowest, to_mask

EXACT_CAP = 20


class CapacityError(ValueError):
    """Instance too large for an exhaustive routine."""


class PreconditionError(ValueError):
    """Input violates an operation's stated precondition."""


@dataclass(frozen=True)
class CyclePartition:
    """A red cycle and a blue cycle as vertex sequences.

    Sequences of length 0, 1 and 2 are the empty cycle, a single vertex and
    an edge; longer sequences close cyclically.
    """

    red: tuple[int, ...]
    blue: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {"red": list(self.red), "blue": list(self.blue)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CyclePartition":
        try:
            return cls(tuple(int(v) for v in obj["red"]), tuple(int(v) for v in obj["blue"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"partition needs integer lists 'red' and 'blue' ({exc!r})") from None


@dataclass(frozen=True)
class Verdict:
    accept: bool
    reason: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.accept

    def to_json_obj(self) -> dict:
        out: dict = {"accept": self.accept}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def check_cycle(g: ColoredGraph | SimpleGraph, seq, color: Color | None = None) -> Verdict:
    """Check one cycle sequence in the convention above."""
    adj = g.adj if color is None or isinstance(g, SimpleGraph) else g.color_adj(color)
    n = g.n
    for v in seq:
        if not 0 <= v < n:
            return Verdict(False, "out-of-range", f"vertex {v}")
    if len(set(seq)) != len(seq):
        if len(seq) == 2:
            return Verdict(False, "bad-degenerate-size", f"edge-cycle {list(seq)} repeats a vertex")
        return Verdict(False, "duplicate-vertex", f"{list(seq)}")
    if len(seq) <= 1:
        return Verdict(True)
    pairs = [(seq[0], seq[1])] if len(seq) == 2 else list(zip(seq, seq[1:] + type(seq)(seq[:1])))
    full_adj = g.adj
    for u, v in pairs:
        if not full_adj[u] >> v & 1:
            return Verdict(False, "missing-edge", f"{u}-{v}")
        if not adj[u] >> v & 1:
            return Verdict(False, "wrong-color", f"{u}-{v}")
    return Verdict(True)


def verify_partition(g: ColoredGraph, p: CyclePartition) -> Verdict:
    red, blue = tuple(p.red), tuple(p.blue)
    for v in red + blue:
        if not 0 <= v < g.n:
            return Verdict(False, "out-of-range", f"vertex {v}")
    if set(red) & set(blue):
        return Verdict(False, "overlap", f"{sorted(set(red) & set(blue))}")
    for seq, c in ((red, Color.RED), (blue, Color.BLUE)):
        v = check_cycle(g, seq, c)
        if not v:
            return Verdict(False, v.reason, f"{c.name.lower()}: {v.detail}")
    if len(set(red) | set(blue)) != g.n:
        missing = sorted(set(range(g.n)) - set(red) - set(blue))
        return Verdict(False, "not-spanning", f"missing {missing}")
    return Verdict(True)


# ---------------------------------------------------------------- subset DP

def _adj_array(adj) -> np.ndarray:
    return np.array(adj, dtype=np.int64) if len(adj) else np.zeros(0, dtype=np.int64)


class HamTable:
    """Hamiltonian-cycle table for every vertex subset of one simple graph."""

    def __init__(self, adj: tuple[int, ...]):
        self.n = len(adj)
        self.adj = adj
        arr = _adj_array(adj)
        if self.n == 0:
            self.dp = np.zeros(1, dtype=np.int64)
            self.ham = np.ones(1, dtype=np.bool_)
        else:
            self.dp = _kernels.path_endpoints(arr, self.n)
            self.ham = _kernels.hamiltonian_flags(self.dp, arr, self.n)

    def has_cycle(self, mask: int) -> bool:
        return bool(self.ham[mask])

    def cycle(self, mask: int) -> tuple[int, ...] | None:
        """Lexicographically least cycle on ``mask`` starting at its lowest vertex."""
        if not self.ham[mask]:
            return None
        if mask == 0:
            return ()
        s = lowest(mask)
        if mask == 1 << s:
            return (s,)
        seq = [s]
        cur = s
        remaining = mask ^ (1 << s)
        dp, adj = self.dp, self.adj
        while remaining:
            for c in bits(adj[cur] & remaining):
                rest = remaining ^ (1 << c)
                if rest:
                    ok = bool(int(dp[rest | 1 << s]) & adj[c])
                else:
                    ok = bool(adj[c] >> s & 1)
                if ok:
                    seq.append(c)
                    remaining = rest
                    cur = c
                    break
            else:  # pragma: no cover - guarded by the ham table
                raise AssertionError("cycle reconstruction failed")
        return tuple(seq)

    def path(self, mask: int, end: int | None = None) -> tuple[int, ...] | None:
        """A Hamiltonian path of G[mask] from its lowest vertex (to ``end`` if given)."""
        if mask == 0:
            return ()
        s = lowest(mask)
        ends = int(self.dp[mask])
        if end is not None:
            ends &= 1 << end
        if not ends:
            return None
        v = lowest(ends)
        seq = [v]
        cur_mask = mask
        while cur_mask != 1 << s:
            prev_mask = cur_mask ^ (1 << v)
            cand = int(self.dp[prev_mask]) & self.adj[v]
            v = lowest(cand)
            seq.append(v)
            cur_mask = prev_mask
        return tuple(reversed(seq))


def exact_partition(g: ColoredGraph, cap: int = EXACT_CAP) -> CyclePartition | None:
    """Decide partitionability exhaustively; least red vertex mask wins."""
    if g.n > cap:
        raise CapacityError(f"n={g.n} exceeds exact cap {cap}; use heuristic_partition")
    if g.n == 0:
        return CyclePartition((), ())
    red = HamTable(g.red)
    blue = HamTable(g.blue)
    s = int(_kernels.first_split(red.ham, blue.ham, g.n))
    if s < 0:
        return None
    return CyclePartition(red.cycle(s), blue.cycle(g.full ^ s))


def hamiltonian_cycle(g: SimpleGraph, within: int | None = None, cap: int = 24) -> tuple[int, ...] | None:
    """Exact Hamiltonian cycle of G[within] (0/1/2-vertex conventions apply)."""
    dom = g.full if within is None else within
    verts = from_mask(dom)
    if len(verts) > cap:
        raise CapacityError(f"{len(verts)} vertices exceed exact cap {cap}")
    local = _localize(g, verts)
    cyc = HamTable(local).cycle((1 << len(verts)) - 1)
    return None if cyc is None else tuple(verts[i] for i in cyc)


def hamiltonian_path(g: SimpleGraph, start: int, end: int, within: int | None = None,
                     cap: int = 24) -> tuple[int, ...] | None:
    """Exact Hamiltonian start-end path of G[within]."""
    dom = g.full if within is None else within
    verts = sorted(from_mask(dom), key=lambda v: (v != start, v))
    if len(verts) > cap:
        raise CapacityError(f"{len(verts)} vertices exceed exact cap {cap}")
    if start == end:
        return (start,) if dom == 1 << start else None
    local = _localize(g, verts)
    p = HamTable(local).path((1 << len(verts)) - 1, end=verts.index(end))
    return None if p is None else tuple(verts[i] for i in p)


def _localize(g: SimpleGraph, verts) -> tuple[int, ...]:
    index = {v: i for i, v in enumerate(verts)}
    return tuple(to_mask(index[u] for u in bits(g.adj[v]) if u in index) for v in verts)


# ---------------------------------------------------------------- path pair

@dataclass(frozen=True)
class PathPairDecomposition:
    red_path: tuple[int, ...]
    blue_path: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {"red_path": list(self.red_path), "blue_path": list(self.blue_path)}


def check_path_pair(g: ColoredGraph, d: PathPairDecomposition) -> Verdict:
    """Both paths monochromatic, disjoint, spanning, and joinable into a cycle."""
    r, b = list(d.red_path), list(d.blue_path)
    if len(set(r + b)) != len(r) + len(b):
        return Verdict(False, "overlap")
    if set(r + b) != set(range(g.n)):
        return Verdict(False, "not-spanning")
    for seq, c in ((r, Color.RED), (b, Color.BLUE)):
        for u, v in zip(seq, seq[1:]):
            if not g.has_edge(u, v, c):
                return Verdict(False, "wrong-color", f"{u}-{v}")
    if r and b:
        joins = [(r[-1], b[0]), (b[-1], r[0])]
        for u, v in joins:
            if u != v and not g.has_edge(u, v):
                return Verdict(False, "missing-edge", f"{u}-{v}")
    return Verdict(True)


def gg_path_cycle(g: ColoredGraph, require_complete: bool = True) -> PathPairDecomposition:
    """Split a Hamiltonian cycle of a 2-colored complete graph into a red and a blue path.

    Vertices are inserted in index order while a red path R and a blue path B
    are maintained (the closing edges are free in a complete graph). With x the
    last vertex of R and y the first of B, a new vertex v extends R if vx is
    red, extends B if vy is blue, and otherwise the color of xy decides which
    path absorbs v together with one endpoint of the other.
    """
    if require_complete and not g.is_complete():
        raise PreconditionError("gg_path_cycle needs a complete graph")
    R: list[int] = []
    B: list[int] = []
    for v in range(g.n):
        if R and g.has_edge(v, R[-1], Color.RED):
            R.append(v)
        elif B and g.has_edge(v, B[0], Color.BLUE):
            B.insert(0, v)
        elif not R:
            R = [v]
        elif not B:
            B = [v]
        else:
            x, y = R[-1], B[0]
            # vx blue-only, vy red-only
            if g.has_edge(x, y, Color.RED):
                R = R + [y, v]
                B = B[1:]
            else:
                B = [v, x, y] + B[1:]
                R = R[:-1]
    return PathPairDecomposition(tuple(R), tuple(B))
