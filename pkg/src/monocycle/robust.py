"""Sparse cuts, robustness certificates, robust partitions, maximal extensions
and near-bipartite cleanup.

Every parameter that scales with a vertex count is multiplied by an explicit
``ambient_n``; callers always state which graph size they mean.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .exact import CapacityError, PreconditionError
from .graph import Color, ColoredGraph, SimpleGraph, bits, from_mask, lowest, to_mask

CUT_CAP = 24
HEURISTIC_RESTARTS = 20


def frac(x) -> Fraction:
    """Exact rational for a user-facing float/str/Fraction parameter."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


def as_view(g, color: Color | None = None) -> SimpleGraph:
    if isinstance(g, SimpleGraph):
        return g
    return g.view(None if color is None else Color.parse(color))


def _domain_mask(g: SimpleGraph, domain) -> int:
    if domain is None:
        return g.full
    if isinstance(domain, int):
        return domain
    return to_mask(domain)


@dataclass(frozen=True)
class Cut:
    X: tuple[int, ...]
    Y: tuple[int, ...]
    crossing: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.crossing, len(self.X) * len(self.Y))

    def is_sparse(self, alpha) -> bool:
        return self.crossing < frac(alpha) * len(self.X) * len(self.Y)

    def to_json_obj(self) -> dict:
        return {"X": list(self.X), "Y": list(self.Y), "crossing": self.crossing,
                "ratio": [self.ratio.numerator, self.ratio.denominator]}


def make_cut(g: SimpleGraph, x: int, y: int) -> Cut:
    return Cut(from_mask(x), from_mask(y), g.crossing(x, y))


def min_ratio_cut_exact(g: SimpleGraph, domain=None) -> Cut:
    """Exhaustive minimum-ratio cut of G[domain]; ties to the smallest X mask
    (X always holds the lowest domain vertex)."""
    dom = _domain_mask(g, domain)
    verts = from_mask(dom)
    m = len(verts)
    if m < 2:
        raise PreconditionError("a cut needs at least two vertices")
    if m > CUT_CAP:
        raise CapacityError(f"exact cut search capped at {CUT_CAP} vertices, got {m}")
    index = {v: i for i, v in enumerate(verts)}
    local = np.array([to_mask(index[u] for u in bits(g.adj[v] & dom)) for v in verts], dtype=np.int64)
    xl, crossing, _ = _kernels.min_ratio_cut(local, m)
    x = to_mask(verts[i] for i in bits(int(xl)))
    return Cut(from_mask(x), from_mask(dom ^ x), int(crossing))


def _better(c1: int, p1: int, c2: int, p2: int) -> bool:
    return c1 * p2 < c2 * p1


def min_ratio_cut_heuristic(g: SimpleGraph, domain=None, seed: int = 0,
                            restarts: int = HEURISTIC_RESTARTS) -> Cut:
    """Seeded single-vertex-move descent on the cut ratio with restarts.

    Starting points: each connected component, the minimum-degree vertex
    alone, then random splits.
    """
    dom = _domain_mask(g, domain)
    verts = from_mask(dom)
    m = len(verts)
    if m < 2:
        raise PreconditionError("a cut needs at least two vertices")
    rng = random.Random(seed)
    starts: list[int] = []
    comps = g.components(dom)
    if len(comps) > 1:
        starts.append(comps[0])
    starts.append(1 << min(verts, key=lambda v: (g.degree(v, dom), v)))
    while len(starts) < restarts + 1:
        x = 0
        for v in verts:
            if rng.random() < 0.5:
                x |= 1 << v
        if x and x != dom:
            starts.append(x)
    best = None
    for x in starts:
        y = dom ^ x
        c = g.crossing(x, y)
        sx = x.bit_count()
        while True:
            move = None
            mc, mp = c, sx * (m - sx)
            for v in verts:
                inside = x if x >> v & 1 else y
                if inside == 1 << v:
                    continue
                d_in = g.degree(v, inside)
                d_out = g.degree(v, dom ^ inside)
                nc = c - d_out + d_in
                nsx = sx - 1 if inside == x else sx + 1
                np_ = nsx * (m - nsx)
                if _better(nc, np_, mc, mp):
                    mc, mp, move = nc, np_, v
            if move is None:
                break
            x ^= 1 << move
            y = dom ^ x
            c = mc
            sx = x.bit_count()
        if not x >> verts[0] & 1:
            x = dom ^ x
        key = (c, sx * (m - sx), x)
        if best is None or _better(key[0], key[1], best[0], best[1]) or (
                key[0] * best[1] == best[0] * key[1] and x < best[2]):
            best = key
    x = best[2]
    return Cut(from_mask(x), from_mask(dom ^ x), best[0])


def find_sparse_cut(g, domain=None, alpha=0.1, mode: str = "exact", seed: int = 0,
                    color: Color | None = None) -> Cut | None:
    """A cut (X, Y) of G[domain] with e(X,Y) < alpha |X||Y|, or None.

    In exact mode the minimum-ratio cut is returned whenever it qualifies, so
    None is conclusive. In heuristic mode None only means none was found.
    """
    view = as_view(g, color)
    if mode == "exact":
        cut = min_ratio_cut_exact(view, domain)
    elif mode == "heuristic":
        cut = min_ratio_cut_heuristic(view, domain, seed)
    elif mode == "auto":
        m = _domain_mask(view, domain).bit_count()
        return find_sparse_cut(view, domain, alpha, "exact" if m <= CUT_CAP else "heuristic", seed)
    else:
        raise ValueError(f"unknown cut mode {mode!r}")
    return cut if cut.is_sparse(alpha) else None


@dataclass(frozen=True)
class RobustCertificate:
    eta: Fraction
    alpha: Fraction
    ambient_n: int
    domain: tuple[int, ...]
    min_degree: int
    min_degree_ok: bool
    worst_vertex: int | None
    mode: str
    sparse_cut: Cut | None
    conclusive: bool

    @property
    def robust(self) -> bool:
        return self.min_degree_ok and self.sparse_cut is None

    def __bool__(self) -> bool:
        return self.robust

    def to_json_obj(self) -> dict:
        return {
            "eta": str(self.eta), "alpha": str(self.alpha), "ambient_n": self.ambient_n,
            "domain": list(self.domain), "min_degree": self.min_degree,
            "min_degree_ok": self.min_degree_ok, "worst_vertex": self.worst_vertex,
            "cut_search": {
                "mode": self.mode,
                "verdict": "no-sparse-cut-found" if self.sparse_cut is None else "sparse-cut",
                "cut": None if self.sparse_cut is None else self.sparse_cut.to_json_obj(),
                "conclusive": self.conclusive,
            },
            "robust": self.robust,
        }


def robust_certificate(g, domain=None, eta=0.1, alpha=0.1, ambient_n: int | None = None,
                       mode: str = "auto", seed: int = 0, color: Color | None = None) -> RobustCertificate:
    """Check min degree >= eta*ambient_n and absence of an alpha-sparse cut."""
    view = as_view(g, color)
    dom = _domain_mask(view, domain)
    eta_f, alpha_f = frac(eta), frac(alpha)
    n_amb = view.n if ambient_n is None else ambient_n
    if not (0 < eta_f <= 1 and 0 < alpha_f <= 1):
        raise ValueError("eta and alpha must lie in (0, 1]")
    if n_amb < dom.bit_count():
        raise ValueError("ambient_n smaller than the domain")
    verts = from_mask(dom)
    if mode == "auto":
        mode = "exact" if len(verts) <= CUT_CAP else "heuristic"
    if len(verts) <= 1:
        # vacuous: no cut exists; a lone vertex has degree 0
        ok = len(verts) == 0 or eta_f * n_amb <= 1
        return RobustCertificate(eta_f, alpha_f, n_amb, verts, 0, ok, None, mode, None, True)
    worst = min(verts, key=lambda v: (view.degree(v, dom), v))
    dmin = view.degree(worst, dom)
    deg_ok = dmin >= eta_f * n_amb
    cut = find_sparse_cut(view, dom, alpha_f, mode, seed)
    conclusive = mode == "exact" or cut is not None
    return RobustCertificate(eta_f, alpha_f, n_amb, verts, dmin, deg_ok, None if deg_ok else worst,
                             mode, cut, conclusive)


# ---------------------------------------------------------------- bipartitions

@dataclass(frozen=True)
class Bipartition:
    S1: tuple[int, ...]
    S2: tuple[int, ...]
    inside_edges: tuple[int, int]
    cross_min_degrees: tuple[int, int]

    @property
    def masks(self) -> tuple[int, int]:
        return to_mask(self.S1), to_mask(self.S2)

    def to_json_obj(self) -> dict:
        return {"S1": list(self.S1), "S2": list(self.S2), "inside_edges": list(self.inside_edges),
                "cross_min_degrees": list(self.cross_min_degrees)}


def make_bipartition(g: SimpleGraph, s1: int, s2: int) -> Bipartition:
    def cross_min(a: int, b: int) -> int:
        return min((g.degree(v, b) for v in bits(a)), default=0)

    return Bipartition(from_mask(s1), from_mask(s2), (g.edge_count(s1), g.edge_count(s2)),
                       (cross_min(s1, s2), cross_min(s2, s1)))


def clean_sparse_cut(g, eta, alpha, cut: Cut, ambient_n: int | None = None,
                     color: Color | None = None) -> Bipartition:
    """Move vertices across a sparse cut until both sides are internally dense.

    First repeatedly move the vertex with the largest positive surplus
    (cross-degree minus own-side degree, ties to the lowest index). Then move
    any vertex below the internal floor (eta - 5 alpha/eta)|side| if it would
    meet the floor on the other side.
    """
    view = as_view(g, color)
    eta_f, alpha_f = frac(eta), frac(alpha)
    x, y = to_mask(cut.X), to_mask(cut.Y)
    dom = x | y
    n = dom.bit_count() if ambient_n is None else ambient_n
    if view.min_degree(dom) < eta_f * n:
        raise PreconditionError("minimum degree below eta*n")
    if not view.crossing(x, y) < alpha_f * x.bit_count() * y.bit_count():
        raise PreconditionError("supplied cut is not alpha-sparse")
    floor = eta_f - 5 * alpha_f / eta_f
    budget = n * n
    moves = 0

    def side_of(v: int) -> int:
        return x if x >> v & 1 else y

    while True:
        best, best_gain = None, 0
        for v in bits(dom):
            own = side_of(v)
            if own == 1 << v:
                continue
            gain = view.degree(v, dom ^ own) - view.degree(v, own)
            if gain > best_gain:
                best, best_gain = v, gain
        if best is None:
            changed = False
            for v in bits(dom):
                own = side_of(v)
                if own == 1 << v:
                    continue
                other = dom ^ own
                if view.degree(v, own) < floor * own.bit_count() and \
                        view.degree(v, other) >= floor * (other.bit_count() + 1) and \
                        view.degree(v, other) > view.degree(v, own):
                    best = v
                    changed = True
                    break
            if not changed:
                break
        x ^= 1 << best
        y = dom ^ x
        moves += 1
        if moves > budget:
            raise RuntimeError("clean_sparse_cut did not converge within n^2 moves")
    return make_bipartition(view, x, y)


def robust_partition(g, eta, alpha, mode: str = "auto", seed: int = 0, color: Color | None = None,
                     domain=None) -> list[tuple[int, ...]]:
    """Split G[domain] along cleaned sparse cuts until no part has one."""
    return [p for p, _ in robust_partition_report(g, eta, alpha, mode, seed, color, domain)]


def robust_partition_report(g, eta, alpha, mode: str = "auto", seed: int = 0,
                            color: Color | None = None, domain=None
                            ) -> list[tuple[tuple[int, ...], RobustCertificate]]:
    view = as_view(g, color)
    dom = _domain_mask(view, domain)
    n = dom.bit_count()
    eta_f, alpha_f = frac(eta), frac(alpha)
    if view.min_degree(dom) < eta_f * n:
        raise PreconditionError(f"min degree {view.min_degree(dom)} below eta*n = {float(eta_f * n):.3f}")
    done: list[int] = []
    stack = [dom]
    while stack:
        part = stack.pop()
        if part.bit_count() < 2:
            done.append(part)
            continue
        cut = find_sparse_cut(view, part, alpha_f, mode, seed)
        if cut is None:
            done.append(part)
            continue
        x, y = to_mask(cut.X), to_mask(cut.Y)
        local_eta = Fraction(view.min_degree(part), part.bit_count())
        if local_eta > 0:
            try:
                b = clean_sparse_cut(view, local_eta, alpha_f, cut)
                cx, cy = b.masks
                if cx and cy:
                    x, y = cx, cy
            except (PreconditionError, RuntimeError):
                pass
        stack.extend([y, x])
    done.sort(key=lowest)
    out = []
    for part in done:
        size = part.bit_count()
        cert = robust_certificate(view, part, eta_f / 2, alpha_f, size, mode, seed)
        out.append((from_mask(part), cert))
    return out


def maximal_extension(g, h0, eta_prime, ambient_n: int | None = None,
                      color: Color | None = None) -> tuple[int, ...]:
    """Greedily add the lowest outside vertex with >= eta'*n neighbours inside."""
    view = as_view(g, color)
    cur = _domain_mask(view, h0)
    if not cur:
        raise PreconditionError("H0 must be nonempty")
    n = view.n if ambient_n is None else ambient_n
    thr = frac(eta_prime) * n
    while True:
        for v in bits(view.full & ~cur):
            if view.degree(v, cur) >= thr:
                cur |= 1 << v
                break
        else:
            return from_mask(cur)


def _max_cut_local(view: SimpleGraph, dom: int, rng: random.Random, restarts: int = 10) -> int:
    verts = from_mask(dom)
    best_x, best_key = None, None
    for r in range(restarts):
        x = 0
        for v in verts:
            if rng.random() < 0.5:
                x |= 1 << v
        improved = True
        while improved:
            improved = False
            for v in verts:
                own = x if x >> v & 1 else dom ^ x
                if view.degree(v, own & ~(1 << v)) > view.degree(v, dom ^ own):
                    x ^= 1 << v
                    improved = True
        y = dom ^ x
        key = (max(view.edge_count(x), view.edge_count(y)), view.edge_count(x) + view.edge_count(y))
        if best_key is None or key < best_key:
            best_key, best_x = key, x
    if not best_x >> verts[0] & 1:
        best_x = dom ^ best_x
    return best_x


def best_split(g, domain=None, seed: int = 0, color: Color | None = None) -> tuple[int, int, int, int]:
    """Bipartition minimising the larger inside edge count.

    Exhaustive for at most 24 vertices, seeded local max-cut otherwise.
    Returns (S1 mask, S2 mask, e(S1), e(S2)).
    """
    view = as_view(g, color)
    dom = _domain_mask(view, domain)
    verts = from_mask(dom)
    m = len(verts)
    if m == 0:
        return 0, 0, 0, 0
    if m <= CUT_CAP:
        index = {v: i for i, v in enumerate(verts)}
        local = np.array([to_mask(index[u] for u in bits(view.adj[v] & dom)) for v in verts], dtype=np.int64)
        sl, _, _ = _kernels.min_max_inside(local, m)
        s1 = to_mask(verts[i] for i in bits(int(sl)))
    else:
        s1 = _max_cut_local(view, dom, random.Random(seed))
    s2 = dom ^ s1
    return s1, s2, view.edge_count(s1), view.edge_count(s2)


def is_near_bipartite(g, beta, domain=None, ambient_n: int | None = None, seed: int = 0,
                      color: Color | None = None) -> bool:
    """True when some split has both inside edge counts < beta * n^2."""
    view = as_view(g, color)
    dom = _domain_mask(view, domain)
    n = dom.bit_count() if ambient_n is None else ambient_n
    _, _, e1, e2 = best_split(view, dom, seed)
    return max(e1, e2) < frac(beta) * n * n


def near_bipartition(g, eta, beta, domain=None, ambient_n: int | None = None, seed: int = 0,
                     color: Color | None = None) -> Bipartition | None:
    """If G[domain] is beta^2-near-bipartite, the cleaned bipartition, else None.

    Cleanup: vertices whose cross-degree is below 3*eta*n/4 are pooled and
    re-split to maximise the crossing edge count (exhaustively for pools of
    at most 16 vertices, greedily above).
    """
    view = as_view(g, color)
    dom = _domain_mask(view, domain)
    n = dom.bit_count() if ambient_n is None else ambient_n
    beta_f, eta_f = frac(beta), frac(eta)
    s1, s2, e1, e2 = best_split(view, dom, seed)
    if not max(e1, e2) < beta_f ** 2 * n * n:
        return None
    thr = 3 * eta_f * n / 4
    t1 = to_mask(v for v in bits(s1) if view.degree(v, s2) < thr)
    t2 = to_mask(v for v in bits(s2) if view.degree(v, s1) < thr)
    pool = t1 | t2
    if pool:
        base1, base2 = s1 & ~pool, s2 & ~pool
        pverts = from_mask(pool)
        if len(pverts) <= 16:
            best = None
            for k in range(1 << len(pverts)):
                a = to_mask(pverts[i] for i in bits(k))
                c = view.crossing(base1 | a, base2 | (pool ^ a))
                if best is None or c > best[0]:
                    best = (c, a)
            a = best[1]
        else:
            a = 0
            for v in pverts:
                if view.degree(v, base2) >= view.degree(v, base1):
                    a |= 1 << v
                    base1 |= 1 << v
                else:
                    base2 |= 1 << v
            base1, base2 = s1 & ~pool, s2 & ~pool
        s1, s2 = base1 | a, base2 | (pool ^ a)
    return make_bipartition(view, s1, s2)


def extreme_vertices(g: ColoredGraph, d, i: Color) -> tuple[int, ...]:
    """Vertices whose degree in the other color is below d."""
    other = Color.parse(i).other
    return tuple(v for v in range(g.n) if g.degree(v, other) < d)
