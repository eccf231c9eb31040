"""Robust structural decomposition and an always-verified heuristic partitioner."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .absorbing import AbsorbingParams, AbsorptionError, AssemblyError, SelectionError, absorb, build_absorbing_path
from .exact import EXACT_CAP, CyclePartition, PreconditionError, exact_partition, hamiltonian_cycle, verify_partition
from .graph import Color, ColoredGraph, SimpleGraph, bits, from_mask, to_mask
from .matching import chvatal_hamiltonian
from .robust import (RobustCertificate, extreme_vertices, frac, is_near_bipartite, maximal_extension,
                     near_bipartition, robust_certificate, robust_partition)

COLORS = (Color.RED, Color.BLUE)


@dataclass(frozen=True)
class PipelineConfig:
    gamma: float = 0.05
    eta: float = 0.2
    alpha: float = 0.05
    cut_mode: str = "auto"
    exact_cap: int = EXACT_CAP
    fallback: bool = True
    rotation_restarts: int = 12
    direct_attempts: int = 12
    absorb_min_n: int = 24
    gadgets: int | None = None
    coverage_floor: int = 2
    z_threshold_rho: float = 0.05   # |Z| < 3*rho*n selects the greedy-path branch

    def to_json_obj(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PipelineConfig":
        return cls(**obj)


class Trace:
    """Ordered log of every branch condition with its measured quantities."""

    def __init__(self) -> None:
        self.entries: list[dict] = []

    def add(self, step: str, holds: bool | None = None, **measured) -> bool | None:
        rec = {"step": step}
        if holds is not None:
            rec["holds"] = bool(holds)
        for k, v in measured.items():
            rec[k] = _jsonable(v)
        self.entries.append(rec)
        return holds

    def to_json_obj(self) -> list[dict]:
        return list(self.entries)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return round(v, 9)
    if isinstance(v, Color):
        return v.code
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


# ------------------------------------------------------------ nice partitions

@dataclass(frozen=True)
class MemberEvidence:
    color: Color
    vertices: tuple[int, ...]
    certificate: RobustCertificate
    near_bipartite: bool
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    bipartite_certificate: RobustCertificate | None = None
    partner: int | None = None
    partner_overlap: int | None = None

    def to_json_obj(self) -> dict:
        out = {"color": self.color.code, "vertices": list(self.vertices),
               "robust": self.certificate.robust, "near_bipartite": self.near_bipartite}
        if self.bipartition is not None:
            out["bipartition"] = [list(self.bipartition[0]), list(self.bipartition[1])]
            out["bipartite_robust"] = self.bipartite_certificate.robust
            out["partner"] = self.partner
            out["partner_overlap"] = self.partner_overlap
        return out


@dataclass(frozen=True)
class NiceVerdict:
    valid: bool
    reason: str | None
    evidence: tuple[MemberEvidence, ...]

    def __bool__(self) -> bool:
        return self.valid

    def to_json_obj(self) -> dict:
        return {"valid": self.valid, "reason": self.reason,
                "members": [e.to_json_obj() for e in self.evidence]}


def validate_nice_partition(g: ColoredGraph, members, eta, alpha, seed: int = 0,
                            mode: str = "auto") -> NiceVerdict:
    """Covering, per-member robustness, and a non-near-bipartite partner for near-bipartite members."""
    n = g.n
    eta, alpha = frac(eta), frac(alpha)
    ms = [(Color.parse(c), to_mask(vs) if not isinstance(vs, int) else vs) for c, vs in members]
    cover = 0
    for _, m in ms:
        cover |= m
    for c in COLORS:
        same = [m for cc, m in ms if cc is c]
        acc = 0
        for m in same:
            if acc & m:
                return NiceVerdict(False, f"members of color {c.code} overlap", ())
            acc |= m
    basic = []
    for c, m in ms:
        cert = robust_certificate(g, m, eta, alpha, n, mode, seed, c)
        nb = is_near_bipartite(g, alpha ** 4, m, n, seed, c)
        basic.append((c, m, cert, nb))
    evidence = []
    reason = None
    if cover != g.full:
        reason = "not covering"
    for k, (c, m, cert, nb) in enumerate(basic):
        if not cert.robust and reason is None:
            reason = f"member {k} is not robust"
        if not nb:
            evidence.append(MemberEvidence(c, from_mask(m), cert, False))
            continue
        b = near_bipartition(g, eta, alpha ** 2, m, n, seed, c)
        if b is None:
            evidence.append(MemberEvidence(c, from_mask(m), cert, True))
            reason = reason or f"member {k}: no (eta, alpha^2)-bipartition (clause (ii))"
            continue
        x, y = b.masks
        if x.bit_count() > y.bit_count():
            x, y = y, x
        bview = g.view(c).bipartite(x, y)
        bcert = robust_certificate(bview, x | y, eta / 2, alpha / 2, n, mode, seed)
        best, best_ov = None, -1
        for j, (cj, mj, _, nbj) in enumerate(basic):
            if cj is c or nbj:
                continue
            ov = (mj & y).bit_count()
            if ov > best_ov:
                best, best_ov = j, ov
        evidence.append(MemberEvidence(c, from_mask(m), cert, True, (from_mask(x), from_mask(y)),
                                       bcert, best, best_ov if best is not None else None))
        need = float(eta) ** 0.5 * n
        if reason is None and (not bcert.robust or best is None or best_ov < need):
            reason = f"member {k}: no qualifying partner (clause (ii))"
    return NiceVerdict(reason is None, reason, tuple(evidence))


# ------------------------------------------------------------ outcomes

@dataclass(frozen=True)
class DirectPartition:
    partition: CyclePartition
    kind: str = "DirectPartition"

    def to_json_obj(self) -> dict:
        return {"variant": self.kind, "partition": self.partition.to_json_obj()}


@dataclass(frozen=True)
class SingleRobust:
    color: Color
    vertices: tuple[int, ...]
    near_bipartite: bool
    certificate: RobustCertificate
    leftover_ok: bool
    kind: str = "SingleRobust"

    def to_json_obj(self) -> dict:
        return {"variant": self.kind, "color": self.color.code, "vertices": list(self.vertices),
                "near_bipartite": self.near_bipartite, "certificate": self.certificate.to_json_obj(),
                "leftover_degree_ok": self.leftover_ok}


@dataclass(frozen=True)
class NicePair:
    members: tuple[tuple[Color, tuple[int, ...]], ...]
    evidence: NiceVerdict
    leftover_ok: bool
    kind: str = "NicePair"

    def to_json_obj(self) -> dict:
        return {"variant": self.kind, "members": [[c.code, list(v)] for c, v in self.members],
                "evidence": self.evidence.to_json_obj(), "leftover_degree_ok": self.leftover_ok}


@dataclass(frozen=True)
class NoOutcome:
    reason: str
    kind: str = "NoOutcome"

    def to_json_obj(self) -> dict:
        return {"variant": self.kind, "reason": self.reason}


@dataclass(frozen=True)
class StructureOutcome:
    result: DirectPartition | SingleRobust | NicePair | NoOutcome
    trace: tuple[dict, ...]

    @property
    def variant(self) -> str:
        return self.result.kind

    def to_json_obj(self) -> dict:
        return {**self.result.to_json_obj(), "trace": list(self.trace)}


def leftover_degrees_ok(g: ColoredGraph, c: Color, h: int, eta) -> bool:
    """Every vertex outside H has color-c degree below eta*n."""
    thr = frac(eta) * g.n
    return all(g.degree(v, c) < thr for v in bits(g.full & ~h))


# ------------------------------------------------------------ decomposition

class _Ctx:
    def __init__(self, g: ColoredGraph, cfg: PipelineConfig, seed: int, tr: Trace):
        self.g, self.cfg, self.seed, self.tr = g, cfg, seed, tr
        self.eta, self.alpha, self.gamma = frac(cfg.eta), frac(cfg.alpha), frac(cfg.gamma)
        self.e = float(cfg.eta)

    def cert(self, c: Color, m: int, ambient: int) -> RobustCertificate:
        return robust_certificate(self.g, m, self.eta, self.alpha, ambient, self.cfg.cut_mode, self.seed, c)

    def near_bip(self, c: Color, m: int) -> bool:
        return is_near_bipartite(self.g, self.alpha ** 4, m, self.g.n, self.seed, c)


def _zprune(ctx: _Ctx) -> tuple[str, int]:
    g, tr, n = ctx.g, ctx.tr, ctx.g.n
    e13, e23 = ctx.e ** (1 / 3) * n, ctx.e ** (2 / 3) * n
    z = {c: to_mask(extreme_vertices(g, e13, c)) for c in COLORS}
    dmin = {c: g.view(c).min_degree() for c in COLORS}
    tr.add("extreme-sets", None, z_red=z[Color.RED].bit_count(), z_blue=z[Color.BLUE].bit_count(),
           delta_red=dmin[Color.RED], delta_blue=dmin[Color.BLUE], threshold=e13, size_floor=e23)
    if tr.add("prune-case-i", all(dmin[c] >= e13 for c in COLORS)):
        return "i", g.full
    if tr.add("prune-case-ii", any(dmin[c] >= e13 and z[c].bit_count() >= e23 for c in COLORS)):
        return "ii", g.full
    if tr.add("prune-case-iii", all(z[c].bit_count() >= e23 for c in COLORS)):
        return "iii", g.full
    d = g.full & ~(z[Color.RED] | z[Color.BLUE])
    ok = d.bit_count() > (1 - 2 * ctx.e ** (2 / 3)) * n and all(
        g.view(c).min_degree(d) >= e13 / 2 for c in COLORS) if d else False
    if tr.add("prune-case-iv", ok, kept=d.bit_count()):
        return "iv", d
    for c in COLORS:
        d = g.full & ~z[c.other]
        if not d:
            continue
        sub = g.view(c.other)
        zc = [v for v in bits(d) if sub.degree(v, d) < e13]
        ok = (d.bit_count() > (1 - ctx.e ** (2 / 3)) * n and g.view(c).min_degree(d) >= e13 / 2
              and len(zc) >= e23)
        if tr.add("prune-case-v", ok, color=c, kept=d.bit_count()):
            return "v", d
    tr.add("prune-no-case", True)
    return "none", g.full


def _raw_candidates(ctx: _Ctx, dom: int) -> list[tuple[Color, int, str]]:
    g, n1 = ctx.g, dom.bit_count()
    e13, e23 = ctx.e ** (1 / 3) * n1, ctx.e ** (2 / 3) * n1
    out = []
    for c in COLORS:
        out.append((c, dom, "whole"))
        other = g.view(c.other)
        zc = to_mask(v for v in bits(dom) if other.degree(v, dom) < e13)
        if zc and zc.bit_count() >= e23:
            if 4 * zc.bit_count() >= (3 + 3 * float(ctx.gamma)) * n1:
                out.append((c, zc, "extreme-core"))
            else:
                view = g.view(c)
                xp = to_mask(x for x in bits(dom & ~zc) if view.degree(x, zc) < ctx.e ** (1 / 3) * zc.bit_count())
                out.append((c, dom & ~xp, "extreme-cover"))
        view = g.view(c).induced(dom)
        try:
            parts = robust_partition(view, ctx.e ** (2 / 3) / 4, ctx.e / 80, ctx.cfg.cut_mode, ctx.seed,
                                     domain=dom)
        except PreconditionError:
            parts = []
        for p in parts:
            if len(p) >= 2:
                out.append((c, to_mask(p), "robust-part"))
    return out


def _certified_candidates(ctx: _Ctx, dom: int) -> list[tuple[Color, int, str]]:
    g, n1 = ctx.g, dom.bit_count()
    seen: set[tuple[Color, int]] = set()
    certified: list[tuple[Color, int, str]] = []

    def consider(c: Color, m: int, origin: str) -> None:
        view = g.view(c).induced(dom)
        if m:
            m = to_mask(maximal_extension(view, m, ctx.eta, n1))
        if (c, m) in seen or not m:
            return
        seen.add((c, m))
        if ctx.cert(c, m, n1).robust:
            certified.append((c, m, origin))

    for c, m, origin in _raw_candidates(ctx, dom):
        consider(c, m, origin)
    for c, m, origin in list(certified):
        if m == dom:
            continue
        y1 = dom & ~m
        x2 = to_mask(v for v in bits(m) if g.degree(v, c.other, y1) < ctx.eta * n1)
        consider(c.other, dom & ~x2, "trim-low-cross")
        l2 = to_mask(v for v in bits(m) if g.degree(v, c, y1) >= ctx.e ** 0.5 * n1)
        consider(c.other, dom & ~l2, "trim-heavy")
    certified.sort(key=lambda t: (-t[1].bit_count(), t[0], t[1]))
    ctx.tr.add("robust-candidates", None,
               found=[[c.code, m.bit_count(), o] for c, m, o in certified])
    return certified


def structure_decompose(g: ColoredGraph, config: PipelineConfig | None = None, seed: int = 0) -> StructureOutcome:
    """Extreme-vertex pruning, robust-component growth and nice-partition assembly.

    Each branch condition is evaluated with the configured constants and logged;
    every returned object is re-certified before it is reported.
    """
    cfg = config or PipelineConfig()
    n = g.n
    gamma = frac(cfg.gamma)
    if n == 0:
        raise PreconditionError("empty graph")
    delta = g.view().min_degree()
    if delta < (Fraction(3, 4) + gamma) * n:
        raise PreconditionError(f"min degree {delta} below (3/4 + gamma) n = {float((Fraction(3, 4) + gamma) * n):.3f}")
    tr = Trace()
    ctx = _Ctx(g, cfg, seed, tr)
    result = _decompose(ctx)
    return StructureOutcome(result, tuple(tr.entries))


def _decompose(ctx: _Ctx):
    g, tr, n, e = ctx.g, ctx.tr, ctx.g.n, ctx.e
    alpha0 = 4 * ctx.alpha / ctx.eta
    gamma0 = float(ctx.gamma) - 8 * e ** (2 / 3)
    tr.add("shifted-constants", None, alpha0=alpha0, gamma0=gamma0,
           alpha0_clamped=min(alpha0, ctx.eta / 2), gamma0_clamped=max(gamma0, 0.0))
    gamma0 = max(gamma0, 0.0)
    case, dom = _zprune(ctx)
    n1 = dom.bit_count()
    cands = _certified_candidates(ctx, dom)
    big = (0.75 + 0.75 * gamma0) * n1
    spanning = [(c, m) for c, m, _ in cands if m == dom]
    pair = None
    for c1, m1, _ in cands:
        if c1 is not Color.RED or m1.bit_count() < big:
            continue
        for c2, m2, _ in cands:
            if c2 is Color.BLUE and m2.bit_count() >= big and m1 | m2 == dom:
                pair = (m1, m2)
                break
        if pair:
            break
    tr.add("prop-conclusion-i", pair is not None)
    tr.add("prop-conclusion-ii", bool(spanning))
    if pair is not None:
        h = {Color.RED: to_mask(maximal_extension(g, pair[0], ctx.eta, n, Color.RED)),
             Color.BLUE: to_mask(maximal_extension(g, pair[1], ctx.eta, n, Color.BLUE))}
        sizes_ok = all(h[c].bit_count() >= (0.75 + float(ctx.gamma) / 2) * n for c in COLORS)
        cover_ok = h[Color.RED] | h[Color.BLUE] == g.full
        if not tr.add("two-large-members", sizes_ok and cover_ok,
                      red=h[Color.RED].bit_count(), blue=h[Color.BLUE].bit_count()):
            return NoOutcome("extended members are too small or miss vertices")
        nb = {c: ctx.near_bip(c, h[c]) for c in COLORS}
        tr.add("near-bipartite", None, red=nb[Color.RED], blue=nb[Color.BLUE])
        if not any(nb.values()):
            return _nice(ctx, h)
        c = Color.RED if nb[Color.RED] else Color.BLUE
        return _near_bipartite_branch(ctx, c, h[c], two_large=True)
    if spanning:
        c, m = spanning[0]
        h1 = to_mask(maximal_extension(g, m, ctx.eta, n, c))
        nb = ctx.near_bip(c, h1)
        large = h1.bit_count() >= (1 - e ** (2 / 3)) * n
        tr.add("spanning-member", None, color=c, size=h1.bit_count(), near_bipartite=nb, large=large)
        if not nb and large:
            cert = ctx.cert(c, h1, n)
            if not cert.robust:
                return NoOutcome("spanning member failed recertification at ambient scale")
            return SingleRobust(c, from_mask(h1), False, cert, leftover_degrees_ok(g, c, h1, ctx.eta))
        if nb and large:
            return _near_bipartite_branch(ctx, c, h1, two_large=False)
        return NoOutcome("spanning member too small after extension")
    return NoOutcome(f"no conclusion reached (pruning case {case})")


def _nice(ctx: _Ctx, h: dict[Color, int]):
    members = [(c, from_mask(h[c])) for c in COLORS]
    v = validate_nice_partition(ctx.g, members, ctx.eta, ctx.alpha, ctx.seed, ctx.cfg.cut_mode)
    ctx.tr.add("nice-partition", v.valid, reason=v.reason)
    if not v.valid:
        return NoOutcome(f"nice partition rejected: {v.reason}")
    ok = all(leftover_degrees_ok(ctx.g, c, h[c], ctx.eta) for c in COLORS)
    return NicePair(tuple(members), v, ok)


def _near_bipartite_branch(ctx: _Ctx, c: Color, h1: int, two_large: bool):
    g, tr, n = ctx.g, ctx.tr, ctx.g.n
    b = near_bipartition(g, ctx.eta / 2, ctx.alpha ** 2, h1, n, ctx.seed, c)
    if b is None:
        tr.add("bipartition", False)
        return NoOutcome("near-bipartite member has no bipartition at alpha^2")
    s, t = b.masks
    if s.bit_count() > t.bit_count():
        s, t = t, s
    view = g.view(c)
    an = ctx.alpha * n
    t1 = to_mask(v for v in bits(t) if view.degree(v, t) >= an)
    u1 = to_mask(v for v in bits(h1) if view.degree(v, g.full & ~h1) >= ctx.gamma * n / 4)
    x = g.full & ~(s | t1 | u1)
    tr.add("partner-seed", None, S=s.bit_count(), T=t.bit_count(), T_heavy=t1.bit_count(),
           U_heavy=u1.bit_count(), X=x.bit_count())
    h2 = to_mask(maximal_extension(g, x, ctx.eta, n, c.other)) if x else 0
    h = {c: h1, c.other: h2}
    if two_large:
        return _nice(ctx, h)
    half = (0.5 + ctx.e ** 2) * n
    if tr.add("partner-large", h2.bit_count() >= half, size=h2.bit_count(), need=half):
        return _nice(ctx, h)
    part = direct_partition(g, c, h1, s, t, ctx.cfg.direct_attempts, ctx.seed)
    tr.add("direct-construction", part is not None)
    if part is None:
        return NoOutcome("direct construction failed")
    return DirectPartition(part)


# ------------------------------------------------------------ direct construction

def _greedy_cover_cycle(view: SimpleGraph, must: list[int], helpers: int, rng: random.Random,
                        balance: tuple[int, int] | None = None) -> tuple[int, ...] | None:
    """Cycle through all of ``must`` using helper vertices as connectors.

    With ``balance = (S, T)`` extra vertices are appended until the uncovered
    parts of S and T have equal size.
    """
    if not must and balance is None:
        return ()
    used = to_mask(must)
    path: list[int] = []
    for z in must:
        if not path or view.has_edge(path[-1], z):
            path.append(z)
            continue
        cand = [w for w in bits(view.adj[path[-1]] & view.adj[z] & helpers & ~used)]
        if not cand:
            return None
        w = rng.choice(cand)
        used |= 1 << w
        path += [w, z]
    if balance is not None:
        s, t = balance
        while True:
            diff = (s & ~used).bit_count() - (t & ~used).bit_count()
            if diff == 0:
                break
            side = s if diff > 0 else t
            if not path:
                pool = from_mask(side & ~used)
                if not pool:
                    return None
                v = rng.choice(pool)
            else:
                pool = from_mask(view.adj[path[-1]] & side & ~used)
                if not pool:
                    return None
                v = max(pool, key=lambda u: ((view.adj[u] & side & ~used).bit_count(), rng.random()))
            path.append(v)
            used |= 1 << v
    if len(path) <= 1 or (len(path) == 2 and view.has_edge(*path)):
        return tuple(path)
    if len(path) >= 3 and view.has_edge(path[-1], path[0]):
        return tuple(path)
    # close through two fresh vertices, one from each side when balancing
    if balance is not None:
        s, t = balance
        for a in bits(view.adj[path[-1]] & (s | t) & ~used):
            other = t if s >> a & 1 else s
            for b in bits(view.adj[a] & view.adj[path[0]] & other & ~used):
                return tuple(path + [a, b])
        return None
    for a in bits(view.adj[path[-1]] & view.adj[path[0]] & helpers & ~used):
        return tuple(path + [a])
    return None


def _bipartite_cycle(view: SimpleGraph, s: int, t: int) -> tuple[int, ...] | None:
    m = s.bit_count()
    if m != t.bit_count():
        return None
    if m == 0:
        return ()
    if m == 1:
        a, b = lowest_two(s, t)
        return (a, b) if view.has_edge(a, b) else None
    bip = view.bipartite(s, t)
    res = chvatal_hamiltonian(bip, sides=(s, t))
    if res.condition_met:
        return res.cycle
    if 2 * m <= 24:
        return hamiltonian_cycle(bip, s | t, cap=24)
    return None


def lowest_two(s: int, t: int) -> tuple[int, int]:
    return from_mask(s)[0], from_mask(t)[0]


def direct_partition(g: ColoredGraph, c: Color, h1: int, s: int, t: int, attempts: int = 12,
                     seed: int = 0) -> CyclePartition | None:
    """Other-color cycle over V - H1 that balances S and T, then a color-c cycle on the rest."""
    rng = random.Random(seed)
    z = from_mask(g.full & ~h1)
    other = g.view(c.other)
    own = g.view(c)
    for _ in range(max(1, attempts)):
        order = list(z)
        rng.shuffle(order)
        cyc2 = _greedy_cover_cycle(other, order, s, rng, balance=(s, t))
        if cyc2 is None:
            continue
        used = to_mask(cyc2)
        cyc1 = _bipartite_cycle(own, s & ~used, t & ~used)
        if cyc1 is None:
            continue
        red, blue = (cyc1, cyc2) if c is Color.RED else (cyc2, cyc1)
        part = CyclePartition(tuple(red), tuple(blue))
        if verify_partition(g, part):
            return part
    return None


# ------------------------------------------------------------ heuristic partitioner

def rotation_cycle(view: SimpleGraph, dom: int, rng: random.Random, locked: tuple[int, ...] = (),
                   max_steps: int | None = None) -> tuple[tuple[int, ...] | None, int]:
    """Rotation-extension search for a long cycle of view[dom] keeping ``locked`` contiguous.

    Returns (cycle or None, mask of uncovered vertices).
    """
    m = dom.bit_count()
    if m == 0:
        return (), 0
    verts = from_mask(dom)
    if m == 1:
        return verts, 0
    adj = {v: view.adj[v] & dom for v in verts}
    lock = {frozenset(p) for p in zip(locked, locked[1:])}
    path = list(locked) if locked else [rng.choice(verts)]
    unused = dom & ~to_mask(path)
    steps = max_steps or 20 * m * m
    for _ in range(steps):
        end = path[-1]
        nxt = adj[end] & unused
        if not nxt and adj[path[0]] & unused:
            path.reverse()
            end = path[-1]
            nxt = adj[end] & unused
        if nxt:
            cands = from_mask(nxt)
            best = min((adj[u] & unused).bit_count() for u in cands)
            u = rng.choice([u for u in cands if (adj[u] & unused).bit_count() == best])
            path.append(u)
            unused &= ~(1 << u)
            continue
        closable = len(path) >= 3 and adj[path[-1]] >> path[0] & 1 and frozenset((path[-1], path[0])) not in lock
        if len(path) == 2 and not unused and adj[path[0]] >> path[1] & 1:
            return tuple(path), 0
        if closable and not unused:
            return tuple(path), 0
        if closable:
            opens = [i for i in range(len(path)) if adj[path[i]] & unused
                     and frozenset((path[i], path[(i + 1) % len(path)])) not in lock]
            if opens:
                i = rng.choice(opens)
                path = path[i + 1:] + path[:i + 1]
                continue
        pivots = [j for j in range(len(path) - 2) if adj[end] >> path[j] & 1
                  and frozenset((path[j], path[j + 1])) not in lock]
        if not pivots:
            break
        j = rng.choice(pivots)
        path = path[:j + 1] + path[j + 1:][::-1]
    if len(path) >= 3 and adj[path[-1]] >> path[0] & 1 and frozenset((path[-1], path[0])) not in lock:
        return tuple(path), unused
    return None, unused


@dataclass(frozen=True)
class HeuristicResult:
    partition: CyclePartition | None
    method: str
    trace: tuple[dict, ...]
    structure: str | None = None

    def to_json_obj(self) -> dict:
        return {"partition": None if self.partition is None else self.partition.to_json_obj(),
                "method": self.method, "structure": self.structure, "trace": list(self.trace)}


def _splice(cycle: tuple[int, ...], old: tuple[int, ...], new: tuple[int, ...]) -> tuple[int, ...] | None:
    k = len(old)
    c = list(cycle)
    for seq, rep in ((old, new), (old[::-1], new[::-1])):
        for i in range(len(c)):
            rot = c[i:] + c[:i]
            if tuple(rot[:k]) == seq:
                return tuple(list(rep) + rot[k:])
    return None


def _attempt_plan(g: ColoredGraph, c: Color, h: int, cfg: PipelineConfig, rng: random.Random,
                  seed: int, tr: Trace) -> CyclePartition | None:
    n = g.n
    z = from_mask(g.full & ~h)
    other = g.view(c.other)
    if len(z) < 3 * cfg.z_threshold_rho * n:
        tr.add("plan-z-small", True, z=len(z))
    else:
        tr.add("plan-z-small", False, z=len(z))
    cyc2 = _greedy_cover_cycle(other, list(z), h, rng)
    if cyc2 is None:
        tr.add("plan-cover-cycle", False, color=c.other)
        return None
    u = g.full & ~to_mask(cyc2)
    view = g.view(c).induced(u)
    ap = None
    if u.bit_count() >= cfg.absorb_min_n:
        try:
            params = AbsorbingParams(gadgets=cfg.gadgets, coverage_floor=cfg.coverage_floor, max_retries=5)
            ap = build_absorbing_path(view, params, seed=seed, variant="vertex")
        except (AssemblyError, SelectionError, PreconditionError) as exc:
            tr.add("plan-absorbing-path", False, error=type(exc).__name__)
    for r in range(cfg.rotation_restarts):
        cyc1, left = rotation_cycle(view, u, rng, ap.path if ap is not None else ())
        if cyc1 is None:
            continue
        if left:
            if ap is None:
                continue
            try:
                newp = absorb(view, ap, from_mask(left))
            except (AbsorptionError, PreconditionError):
                continue
            cyc1 = _splice(cyc1, ap.path, newp)
            if cyc1 is None:
                continue
        red, blue = (cyc1, cyc2) if c is Color.RED else (cyc2, cyc1)
        part = CyclePartition(tuple(red), tuple(blue))
        if verify_partition(g, part):
            tr.add("plan-success", True, color=c, restart=r, absorbed=left.bit_count())
            return part
    tr.add("plan-success", False, color=c)
    return None


def heuristic_partition(g: ColoredGraph, config: PipelineConfig | None = None, seed: int = 0) -> HeuristicResult:
    """Structure, cover cycle for the outside set, rotation-extension with an absorbing
    segment, absorption of leftovers, verification; exact search as the fallback."""
    cfg = config or PipelineConfig()
    tr = Trace()
    if g.n == 0:
        return HeuristicResult(CyclePartition((), ()), "trivial", ())
    rng = random.Random(seed)
    plans: list[tuple[Color, int]] = []
    structure = None
    try:
        out = structure_decompose(g, cfg, seed)
        structure = out.variant
        tr.add("structure", None, variant=out.variant)
        res = out.result
        if isinstance(res, DirectPartition):
            return HeuristicResult(res.partition, "direct", tuple(tr.entries), structure)
        if isinstance(res, SingleRobust):
            plans.append((res.color, to_mask(res.vertices)))
        elif isinstance(res, NicePair):
            for c, vs in sorted(res.members, key=lambda t: -len(t[1])):
                plans.append((c, to_mask(vs)))
    except PreconditionError as exc:
        tr.add("structure", False, error=str(exc))
    for c in COLORS:
        if (c, g.full) not in plans:
            plans.append((c, g.full))
    for c, h in plans:
        part = _attempt_plan(g, c, h, cfg, rng, seed, tr)
        if part is not None:
            return HeuristicResult(part, "heuristic", tuple(tr.entries), structure)
    if cfg.fallback and g.n <= cfg.exact_cap:
        part = exact_partition(g, cfg.exact_cap)
        tr.add("exact-fallback", part is not None)
        return HeuristicResult(part, "exact-fallback", tuple(tr.entries), structure)
    return HeuristicResult(None, "none", tuple(tr.entries), structure)
