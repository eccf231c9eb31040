"""Two-multicolored graphs stored as per-color bitmask adjacency.

Vertices are the integers ``0..n-1``. Vertex sets travel through the public
API as sorted tuples and are converted to Python-int bitmasks internally.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Malformed edge-list or JSON graph document."""


class Color(enum.IntEnum):
    RED = 1
    BLUE = 2

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @property
    def code(self) -> str:
        return "R" if self is Color.RED else "B"

    @classmethod
    def parse(cls, text: str | "Color") -> "Color":
        if isinstance(text, Color):
            return text
        key = str(text).strip().upper()
        if key in ("R", "RED", "1"):
            return cls.RED
        if key in ("B", "BLUE", "2"):
            return cls.BLUE
        raise ValueError(f"unknown color {text!r}")


_LABELS = {1: "R", 2: "B", 3: "RB"}
_CODES = {"R": 1, "B": 2, "RB": 3, "BR": 3}


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class SimpleGraph:
    """An uncolored graph on ``0..n-1`` given by neighbor bitmasks.

    Used for one-color views, the underlying total graph and bipartite views.
    """

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loop")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int, within: int | None = None) -> int:
        a = self.adj[v]
        return (a if within is None else a & within).bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return from_mask(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self, within: int | None = None) -> int:
        dom = self.full if within is None else within
        return sum((self.adj[v] & dom).bit_count() for v in bits(dom)) // 2

    def crossing(self, x: int, y: int) -> int:
        """e(X, Y) for disjoint masks."""
        return sum((self.adj[v] & y).bit_count() for v in bits(x))

    def min_degree(self, within: int | None = None) -> int:
        dom = self.full if within is None else within
        if not dom:
            return 0
        return min((self.adj[v] & dom).bit_count() for v in bits(dom))

    def induced(self, within: int) -> "SimpleGraph":
        """Same vertex labels, edges restricted to ``within``."""
        return SimpleGraph(self.n, tuple(a & within if within >> v & 1 else 0 for v, a in enumerate(self.adj)))

    def bipartite(self, x: int, y: int) -> "SimpleGraph":
        """Keep only edges between the disjoint masks ``x`` and ``y``."""
        out = []
        for v, a in enumerate(self.adj):
            if x >> v & 1:
                out.append(a & y)
            elif y >> v & 1:
                out.append(a & x)
            else:
                out.append(0)
        return SimpleGraph(self.n, tuple(out))

    def is_connected(self, within: int | None = None) -> bool:
        dom = self.full if within is None else within
        if not dom:
            return True
        return self.component(lowest(dom), dom) == dom

    def component(self, v: int, within: int | None = None) -> int:
        dom = self.full if within is None else within
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self.adj[u]
            nxt &= dom & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def components(self, within: int | None = None) -> list[int]:
        dom = self.full if within is None else within
        out = []
        while dom:
            c = self.component(lowest(dom), dom)
            out.append(c)
            dom &= ~c
        return out


@dataclass(frozen=True)
class ColoredGraph:
    """Simple graph whose edges carry the color set {R}, {B} or {R, B}."""

    n: int
    red: tuple[int, ...]
    blue: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.red) != self.n or len(self.blue) != self.n:
            raise ValueError("adjacency length mismatch")
        for v in range(self.n):
            if (self.red[v] | self.blue[v]) >> v & 1:
                raise ValueError(f"loop at {v}")
            if (self.red[v] | self.blue[v]) >> self.n:
                raise ValueError(f"neighbor out of range at {v}")
        for v in range(self.n):
            for u in bits(self.red[v]):
                if not self.red[u] >> v & 1:
                    raise ValueError("asymmetric red adjacency")
            for u in bits(self.blue[v]):
                if not self.blue[u] >> v & 1:
                    raise ValueError("asymmetric blue adjacency")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, object]]) -> "ColoredGraph":
        """Build from ``(u, v, label)`` where label is a Color, 'R', 'B' or 'RB'."""
        red = [0] * n
        blue = [0] * n
        for u, v, lab in edges:
            code = _label_code(lab)
            if code & 1:
                red[u] |= 1 << v
                red[v] |= 1 << u
            if code & 2:
                blue[u] |= 1 << v
                blue[v] |= 1 << u
        return cls(n, tuple(red), tuple(blue))

    @classmethod
    def empty(cls, n: int) -> "ColoredGraph":
        return cls(n, (0,) * n, (0,) * n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def adj(self) -> tuple[int, ...]:
        return tuple(r | b for r, b in zip(self.red, self.blue))

    def color_adj(self, c: Color) -> tuple[int, ...]:
        return self.red if Color(c) is Color.RED else self.blue

    def view(self, c: Color | None = None) -> SimpleGraph:
        """One-color view (``c`` given) or the underlying graph (``c=None``)."""
        return SimpleGraph(self.n, self.adj if c is None else self.color_adj(c))

    def has_edge(self, u: int, v: int, c: Color | None = None) -> bool:
        a = self.adj[u] if c is None else self.color_adj(c)[u]
        return bool(a >> v & 1)

    def label(self, u: int, v: int) -> str | None:
        code = (self.red[u] >> v & 1) | (self.blue[u] >> v & 1) << 1
        return _LABELS.get(code)

    def degree(self, v: int, c: Color | None = None, within: int | None = None) -> int:
        a = self.adj[v] if c is None else self.color_adj(c)[v]
        return (a if within is None else a & within).bit_count()

    def edges(self) -> list[tuple[int, int, str]]:
        out = []
        for u in range(self.n):
            for v in bits((self.red[u] | self.blue[u]) >> (u + 1) << (u + 1)):
                out.append((u, v, self.label(u, v)))
        return out

    def is_complete(self) -> bool:
        full = self.full
        return all((a | 1 << v) == full for v, a in enumerate(self.adj))

    def relabel(self, recolor: dict[tuple[int, int], str]) -> "ColoredGraph":
        edges = {(u, v): lab for u, v, lab in self.edges()}
        for (u, v), lab in recolor.items():
            key = (min(u, v), max(u, v))
            if key not in edges:
                raise KeyError(f"no edge {key}")
            edges[key] = lab
        return ColoredGraph.from_edges(self.n, [(u, v, lab) for (u, v), lab in edges.items()])

    def canonical_hash(self) -> str:
        return hashlib.sha256(dumps_json(self).encode()).hexdigest()


def _label_code(lab: object) -> int:
    if isinstance(lab, int) and lab in (1, 2, 3):
        return int(lab)
    code = _CODES.get(str(lab).strip().upper())
    if code is None:
        raise ValueError(f"bad color label {lab!r}")
    return code


# ---------------------------------------------------------------- serialization

def loads(text: str) -> ColoredGraph:
    """Parse the ``n=<int>`` / ``u v R|B|RB`` edge-list format."""
    n = None
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("n="):
                raise ParseError(f"line {lineno}: expected 'n=<int>' header")
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count") from None
            if n < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected '<u> <v> <R|B|RB>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: vertex indices must be integers") from None
        code = _CODES.get(parts[2].upper())
        if code is None:
            raise ParseError(f"line {lineno}: bad color {parts[2]!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex index out of range for n={n}")
        if u == v:
            raise ParseError(f"line {lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen and seen[key] != code:
            raise ParseError(f"line {lineno}: duplicate edge {key} with conflicting color")
        seen[key] = code
    if n is None:
        raise ParseError("line 1: missing 'n=<int>' header")
    return ColoredGraph.from_edges(n, [(u, v, c) for (u, v), c in seen.items()])


def dumps(g: ColoredGraph) -> str:
    lines = [f"n={g.n}"]
    lines += [f"{u} {v} {lab}" for u, v, lab in g.edges()]
    return "\n".join(lines) + "\n"


def to_json_obj(g: ColoredGraph) -> dict:
    return {"n": g.n, "edges": [[u, v, lab] for u, v, lab in g.edges()]}


def dumps_json(g: ColoredGraph) -> str:
    return json.dumps(to_json_obj(g), separators=(",", ":"))


def loads_json(text: str) -> ColoredGraph:
    try:
        obj = json.loads(text)
        n = int(obj["n"])
        raw = obj["edges"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad JSON graph: {exc}") from None
    body = [f"n={n}"] + [f"{u} {v} {lab}" for u, v, lab in raw]
    return loads("\n".join(body))


def load_graph(path_or_text: str) -> ColoredGraph:
    """Load from a file path or a literal document (text or JSON)."""
    text = path_or_text
    if "\n" not in path_or_text and not path_or_text.lstrip().startswith(("n=", "{")):
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    return loads_json(text) if text.lstrip().startswith("{") else loads(text)


# ---------------------------------------------------------------- degrees

@dataclass(frozen=True)
class DegreeReport:
    delta: int
    delta_red: int
    delta_blue: int
    per_vertex: tuple[tuple[int, int, int], ...]  # (total, red, blue)
    empty: bool


def degree_report(g: ColoredGraph) -> DegreeReport:
    table = tuple(
        ((r | b).bit_count(), r.bit_count(), b.bit_count()) for r, b in zip(g.red, g.blue)
    )
    if not table:
        return DegreeReport(0, 0, 0, (), True)
    return DegreeReport(
        delta=min(t[0] for t in table),
        delta_red=min(t[1] for t in table),
        delta_blue=min(t[2] for t in table),
        per_vertex=table,
        empty=False,
    )


@dataclass(frozen=True)
class MarkovBounds:
    bound_geq: float
    bound_leq: float | None
    leq_applicable: bool


def markov_bounds(values: Sequence[float], a: float, b: float | None = None) -> MarkovBounds:
    """Markov-type bounds on how many entries sit above / below ``a``.

    ``bound_geq = sum/a`` bounds ``#{s >= a}``. When ``a <= mean < max <= b``
    also ``bound_leq = (b|S| - sum)/(b - a)`` bounds ``#{s <= a}``.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    vals = list(values)
    if any(s < 0 for s in vals):
        raise ValueError("values must be non-negative")
    total = float(sum(vals))
    geq = total / a
    if b is None or not vals:
        return MarkovBounds(geq, None, False)
    mean = total / len(vals)
    ok = a <= mean < max(vals) <= b
    if not ok:
        return MarkovBounds(geq, None, False)
    return MarkovBounds(geq, (b * len(vals) - total) / (b - a), True)
