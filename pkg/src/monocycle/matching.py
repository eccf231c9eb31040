"""Degree-sequence Hamiltonicity, multipartite perfect matchings and connected
matchings in 2-multicolored graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .exact import CapacityError, PreconditionError, Verdict, hamiltonian_cycle, hamiltonian_path
from .graph import Color, ColoredGraph, SimpleGraph, bits, from_mask, to_mask
from .robust import as_view

EXACT_FALLBACK_CAP = 24


class GuaranteeViolation(RuntimeError):
    """A guaranteed object was not produced although every hypothesis held."""


# ------------------------------------------------------------ Hamiltonicity

@dataclass(frozen=True)
class ChvatalResult:
    condition_met: bool
    cycle: tuple[int, ...] | None
    failing_index: int | None = None

    def to_json_obj(self) -> dict:
        return {"condition_met": self.condition_met,
                "cycle": None if self.cycle is None else list(self.cycle),
                "failing_index": self.failing_index}


def _mask_of(vs) -> int:
    return vs if isinstance(vs, int) else to_mask(vs)


def chvatal_condition(view: SimpleGraph, dom: int) -> int | None:
    """First index i violating the sorted-degree condition, or None if it holds."""
    n = dom.bit_count()
    d = [0] + sorted(view.degree(v, dom) for v in bits(dom))
    for i in range(1, (n + 1) // 2):
        if not (d[i] >= i + 1 or d[n - i] >= n - i):
            return i
    return None


def bipartite_chvatal_condition(view: SimpleGraph, s: int, t: int) -> int | None:
    m = s.bit_count()
    du = [0] + sorted(view.degree(v, t) for v in bits(s))
    dv = [0] + sorted(view.degree(v, s) for v in bits(t))
    for i in range(1, m):
        if not (du[i] > i or dv[m - i] > m - i):
            return i
    return None


def closure_cycle(view: SimpleGraph, dom: int, sides: tuple[int, int] | None = None
                  ) -> tuple[int, ...] | None:
    """Hamiltonian cycle through the degree-sum closure, or None if the closure is not complete.

    Pairs with degree sum at least |dom| (or m + 1 across a balanced
    bipartition with m per side) are added until none remain. A complete
    closure yields a trivial cycle, and the added edges are then removed in
    reverse order, each time rerouting through a crossing pair.
    """
    verts = from_mask(dom)
    n = len(verts)
    if sides is None:
        allowed = {v: dom & ~(1 << v) for v in verts}
        need = n
    else:
        s, t = sides
        allowed = {v: (t if s >> v & 1 else s) for v in verts}
        need = s.bit_count() + 1
    adj = {v: view.adj[v] & allowed[v] for v in verts}
    added: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for u in verts:
            for v in bits(allowed[u] & ~adj[u]):
                if v > u and adj[u].bit_count() + adj[v].bit_count() >= need:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                    added.append((u, v))
                    changed = True
    if any(adj[v] != allowed[v] for v in verts):
        return None
    if sides is None:
        cyc = list(verts)
    else:
        cyc = [w for pair in zip(from_mask(sides[0]), from_mask(sides[1])) for w in pair]
    for u, v in reversed(added):
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        pu, pv = cyc.index(u), cyc.index(v)
        if (pu - pv) % n not in (1, n - 1):
            continue
        cyc = cyc[pu:] + cyc[:pu]
        if cyc[1] == v:
            cyc = [cyc[0]] + cyc[:0:-1]
        # now cyc[0] = u, cyc[-1] = v
        for i in range(1, n - 2):
            if adj[u] >> cyc[i + 1] & 1 and adj[v] >> cyc[i] & 1:
                cyc = [cyc[0]] + cyc[i + 1:] + cyc[i:0:-1]
                break
        else:  # pragma: no cover - excluded by the degree-sum argument
            raise GuaranteeViolation(f"no crossing pair when removing {u}-{v}")
    return tuple(cyc)


def _rotate_least(cyc: tuple[int, ...]) -> tuple[int, ...]:
    i = cyc.index(min(cyc))
    c = cyc[i:] + cyc[:i]
    return c if len(c) < 3 or c[1] < c[-1] else (c[0],) + tuple(reversed(c[1:]))


def chvatal_hamiltonian(g, sides=None, within=None, color: Color | None = None) -> ChvatalResult:
    """Check the sorted-degree condition and, when it holds, produce a Hamiltonian cycle.

    With ``sides`` the balanced bipartite version is used on the edges between
    the two sides. A failed condition makes no claim about Hamiltonicity.
    """
    view = as_view(g, color)
    if sides is None:
        dom = view.full if within is None else _mask_of(within)
        if dom.bit_count() < 3:
            raise PreconditionError("the degree condition needs at least 3 vertices")
        bad = chvatal_condition(view, dom)
        bip = None
    else:
        s, t = _mask_of(sides[0]), _mask_of(sides[1])
        if s & t or s.bit_count() != t.bit_count():
            raise PreconditionError("bipartite version needs disjoint sides of equal size")
        if s.bit_count() < 2:
            raise PreconditionError("bipartite version needs at least 2 vertices per side")
        dom = s | t
        bad = bipartite_chvatal_condition(view, s, t)
        bip = (s, t)
    if bad is not None:
        return ChvatalResult(False, None, bad)
    cyc = closure_cycle(view, dom, bip)
    if cyc is None:
        work = view if bip is None else view.bipartite(*bip)
        if dom.bit_count() > EXACT_FALLBACK_CAP:
            raise CapacityError("closure incomplete and instance too large for exact search")
        cyc = hamiltonian_cycle(work, dom, cap=EXACT_FALLBACK_CAP)
        if cyc is None:
            raise GuaranteeViolation("degree condition held but no Hamiltonian cycle exists")
    return ChvatalResult(True, _rotate_least(cyc))


@dataclass(frozen=True)
class BiconnectedResult:
    path: tuple[int, ...] | None
    guaranteed: bool
    failed_floor: str | None = None

    @property
    def label(self) -> str:
        if self.path is None:
            return "none"
        return "guaranteed" if self.guaranteed else "outside-guarantee"

    def to_json_obj(self) -> dict:
        return {"path": None if self.path is None else list(self.path), "label": self.label,
                "failed_floor": self.failed_floor}


def hamiltonian_biconnected_check(g, s_side, t_side, x: int, y: int,
                                  color: Color | None = None) -> BiconnectedResult:
    """Hamiltonian x..y path of the bipartite graph between the two sides.

    Under cross-degree floors above m/2 + 1 the path comes from a cycle on the
    sides without x and y, spliced at a consecutive pair; otherwise exact search
    answers and the result is labelled outside the guarantee.
    """
    view = as_view(g, color)
    s, t = _mask_of(s_side), _mask_of(t_side)
    if s & t:
        raise PreconditionError("sides overlap")
    m = s.bit_count()
    if m != t.bit_count():
        raise PreconditionError(f"unbalanced sides {m} and {t.bit_count()}")
    if not (s >> x & 1 and t >> y & 1):
        raise PreconditionError("x must lie in the first side and y in the second")
    bip = view.bipartite(s, t)
    floor = Fraction(m, 2) + 1
    failed = None
    for side, other, name in ((s, t, "first"), (t, s, "second")):
        low = [v for v in bits(side) if bip.degree(v, other) <= floor]
        if low:
            failed = f"{name}-side vertex {low[0]} has cross degree {bip.degree(low[0], other)} <= {floor}"
            break
    if failed is None:
        path = _splice_path(bip, s, t, x, y)
        if path is not None:
            return BiconnectedResult(path, True)
    if 2 * m > EXACT_FALLBACK_CAP:
        return BiconnectedResult(None, False, failed)
    path = hamiltonian_path(bip, x, y, s | t, cap=EXACT_FALLBACK_CAP)
    return BiconnectedResult(path, False, failed)


def _splice_path(bip: SimpleGraph, s: int, t: int, x: int, y: int) -> tuple[int, ...] | None:
    m = s.bit_count()
    if m == 1:
        return (x, y) if bip.has_edge(x, y) else None
    rs, rt = s & ~(1 << x), t & ~(1 << y)
    if m == 2:
        (a,), (b,) = from_mask(rs), from_mask(rt)
        ok = bip.has_edge(x, b) and bip.has_edge(b, a) and bip.has_edge(a, y)
        return (x, b, a, y) if ok else None
    res = chvatal_hamiltonian(bip, sides=(rs, rt))
    if not res.condition_met:
        return None
    c = list(res.cycle)
    k = len(c)
    for cyc in (c, c[::-1]):
        for i in range(k):
            vi, vn = cyc[i], cyc[(i + 1) % k]
            if bip.has_edge(x, vn) and bip.has_edge(y, vi):
                walk = [cyc[(i + 1 + j) % k] for j in range(k)]  # v_{i+1} ... v_i
                return (x, *walk, y)
    return None


# ------------------------------------------------------------ matchings

@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]
    colors: tuple[Color | None, ...] = ()
    connected: bool | None = None

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for e in self.edges for v in e))

    def to_json_obj(self) -> dict:
        out: dict = {"edges": [list(e) for e in self.edges]}
        if self.colors:
            out["colors"] = [None if c is None else c.code for c in self.colors]
        if self.connected is not None:
            out["connected"] = self.connected
        return out


@dataclass(frozen=True)
class PartitionedHost:
    graph: SimpleGraph
    parts: tuple[tuple[int, ...], ...]


def validate_matching(g, m: Matching, h1=None, h2=None) -> Verdict:
    """Disjoint edges, each present in its assigned color (and inside its host component)."""
    seen = 0
    hosts = {Color.RED: _mask_of(h1) if h1 is not None else None,
             Color.BLUE: _mask_of(h2) if h2 is not None else None}
    for k, (u, v) in enumerate(m.edges):
        if (seen >> u | seen >> v) & 1 or u == v:
            return Verdict(False, "not-disjoint", f"{u}-{v}")
        seen |= 1 << u | 1 << v
        c = m.colors[k] if m.colors else None
        if isinstance(g, ColoredGraph):
            if not g.has_edge(u, v, c):
                return Verdict(False, "missing-edge" if c is None else "wrong-color", f"{u}-{v}")
        elif not g.has_edge(u, v):
            return Verdict(False, "missing-edge", f"{u}-{v}")
        if c is not None and hosts[c] is not None and not (hosts[c] >> u & hosts[c] >> v & 1):
            return Verdict(False, "outside-host", f"{u}-{v}")
    return Verdict(True)


def check_multipartite(host: PartitionedHost) -> None:
    g = host.graph
    n = g.n
    masks = [to_mask(p) for p in host.parts]
    union = 0
    for p in masks:
        if not p:
            raise PreconditionError("empty part")
        if union & p:
            raise PreconditionError("parts overlap")
        union |= p
    if union != g.full:
        raise PreconditionError("parts do not cover V")
    if n % 2:
        raise PreconditionError(f"n={n} is odd")
    for p in masks:
        size = p.bit_count()
        if 2 * size > n:
            raise PreconditionError(f"part of size {size} exceeds n/2={Fraction(n, 2)}")
        if g.edge_count(p):
            raise PreconditionError("edge inside a part")
        for x in bits(p):
            if 4 * g.degree(x) <= 3 * n - 4 * size:
                raise PreconditionError(
                    f"degree floor: deg({x})={g.degree(x)} <= 3n/4-|X_i|={Fraction(3 * n, 4) - size}")


def _max_matching(g: SimpleGraph, edges=None) -> tuple[tuple[int, int], ...]:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges() if edges is None else edges)
    m = nx.max_weight_matching(nxg, maxcardinality=True)
    return tuple(sorted(tuple(sorted(e)) for e in m))


def multipartite_perfect_matching(host: PartitionedHost) -> Matching:
    """Perfect matching of a dense multipartite graph, plus a connectivity check."""
    check_multipartite(host)
    g = host.graph
    edges = _max_matching(g)
    if 2 * len(edges) != g.n:
        raise GuaranteeViolation(f"matching of size {len(edges)} on {g.n} vertices under valid hypotheses")
    connected = g.is_connected()
    if not connected:
        raise GuaranteeViolation("host disconnected under valid hypotheses")
    return Matching(edges, (), True)


# ------------------------------------------------------------ connected matching

@dataclass(frozen=True)
class ConnectedMatchingReport:
    matching: Matching
    case: str
    min_degree_stripped: int | None = None

    def to_json_obj(self) -> dict:
        return {"case": self.case, "min_degree_stripped": self.min_degree_stripped,
                **self.matching.to_json_obj()}


def _is_component(view: SimpleGraph, h: int) -> bool:
    return h != 0 and view.component(lowest_bit(h)) == h


def lowest_bit(m: int) -> int:
    return (m & -m).bit_length() - 1


def stripped_graph(g: ColoredGraph, h1: int, h2: int) -> ColoredGraph:
    """Drop the foreign color on edges with both ends private to one component."""
    red, blue = list(g.red), list(g.blue)
    for i, (own, other) in enumerate(((h1, h2), (h2, h1))):
        private = own & ~other
        foreign = blue if i == 0 else red
        for v in bits(private):
            foreign[v] &= ~private
    return ColoredGraph(g.n, tuple(red), tuple(blue))


def _assign_colors(g: ColoredGraph, edges, h1: int, h2: int) -> tuple[Color, ...]:
    out = []
    for u, v in edges:
        for c, h in ((Color.RED, h1), (Color.BLUE, h2)):
            if g.has_edge(u, v, c) and h >> u & h >> v & 1:
                out.append(c)
                break
        else:
            raise GuaranteeViolation(f"edge {u}-{v} lies in neither host component")
    return tuple(out)


def _cycle_matching(gp: ColoredGraph) -> tuple[tuple[int, int], ...]:
    view = gp.view()
    res = chvatal_hamiltonian(view)
    cyc = res.cycle
    if cyc is None:
        if view.n > EXACT_FALLBACK_CAP:
            raise PreconditionError("degree condition fails on the stripped graph and n is too large for exact search")
        cyc = hamiltonian_cycle(view, cap=EXACT_FALLBACK_CAP)
        if cyc is None:
            raise PreconditionError("stripped graph has no Hamiltonian cycle")
    return tuple(sorted(tuple(sorted((cyc[k], cyc[k + 1]))) for k in range(0, len(cyc), 2)))


def connected_matching(g: ColoredGraph, h1, h2) -> ConnectedMatchingReport:
    """Perfect matching inside E(H1) | E(H2) for components H1 (red) and H2 (blue)."""
    n = g.n
    if n % 2:
        raise PreconditionError(f"n={n} is odd")
    if n == 0:
        return ConnectedMatchingReport(Matching((), (), None), "empty")
    if 4 * g.view().min_degree() < 3 * n:
        raise PreconditionError("minimum degree below 3n/4")
    m1, m2 = _mask_of(h1), _mask_of(h2)
    rv, bv = g.view(Color.RED), g.view(Color.BLUE)
    if not _is_component(rv, m1) or not _is_component(bv, m2):
        raise PreconditionError("H1 and H2 must be components of the red and blue graphs")
    gp = stripped_graph(g, m1, m2)
    delta = gp.view().min_degree()
    if 4 * m1.bit_count() >= 3 * n and 4 * m2.bit_count() >= 3 * n and m1 | m2 == g.full:
        if 2 * delta < n:
            raise PreconditionError(f"stripped graph has min degree {delta} < n/2")
        edges = _cycle_matching(gp)
        return ConnectedMatchingReport(Matching(edges, _assign_colors(g, edges, m1, m2)), "i", delta)
    for full_c, (mf, mo) in ((Color.RED, (m1, m2)), (Color.BLUE, (m2, m1))):
        if mf != g.full:
            continue
        other_view = bv if full_c is Color.RED else rv
        comps = other_view.components()
        if mo.bit_count() != max(c.bit_count() for c in comps):
            continue
        if 2 * mo.bit_count() > n:
            edges = _cycle_matching(gp)
            return ConnectedMatchingReport(Matching(edges, _assign_colors(g, edges, m1, m2)),
                                           "ii-large", delta)
        cross = [(u, v) for u, v in g.view(full_c).edges()
                 if not any(c >> u & c >> v & 1 for c in comps)]
        host = PartitionedHost(SimpleGraph.from_edges(n, cross), tuple(from_mask(c) for c in comps))
        mm = multipartite_perfect_matching(host)
        return ConnectedMatchingReport(Matching(mm.edges, tuple(full_c for _ in mm.edges), True),
                                       "ii-multipartite", delta)
    raise PreconditionError("neither hypothesis case holds for (H1, H2)")
