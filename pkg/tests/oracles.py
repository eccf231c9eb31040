"""Naive reference implementations, written independently of the package.

Graphs are handled here as dicts of neighbour sets so that none of the
bitmask machinery under test is reused.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations


def neighbour_sets(g, color=None):
    """{v: set(neighbours)} in one color ('R'/'B') or in total (None)."""
    nb = {v: set() for v in range(g.n)}
    for u, v, lab in g.edges():
        if color is None or color in lab:
            nb[u].add(v)
            nb[v].add(u)
    return nb


def cycle_vertex_sets(nb, n):
    """Every vertex set that carries a cycle (sizes 0, 1, 2 by convention)."""
    found = {frozenset()}
    found.update(frozenset([v]) for v in range(n))
    found.update(frozenset([u, v]) for u in range(n) for v in nb[u] if u < v)
    for s in range(n):
        seen = set()
        stack = [(s, (s,))]
        while stack:
            end, path = stack.pop()
            key = (end, frozenset(path))
            if key in seen:
                continue
            seen.add(key)
            if len(path) >= 3 and s in nb[end]:
                found.add(frozenset(path))
            for w in nb[end]:
                if w > s and w not in path:
                    stack.append((w, path + (w,)))
    return found


def partition_exists(g) -> bool:
    """Enumerate red cycle sets and blue cycle sets and look for complements."""
    everything = frozenset(range(g.n))
    red = cycle_vertex_sets(neighbour_sets(g, "R"), g.n)
    blue = cycle_vertex_sets(neighbour_sets(g, "B"), g.n)
    return any(everything - r in blue for r in red)


def is_hamiltonian_brute(nb, verts) -> bool:
    verts = sorted(verts)
    if len(verts) <= 1:
        return True
    if len(verts) == 2:
        return verts[1] in nb[verts[0]]
    first, rest = verts[0], verts[1:]
    for perm in permutations(rest):
        seq = (first,) + perm
        if all(seq[i + 1] in nb[seq[i]] for i in range(len(seq) - 1)) and first in nb[seq[-1]]:
            return True
    return False


def min_cut_ratio(nb, verts) -> Fraction:
    verts = sorted(verts)
    best = None
    anchor, rest = verts[0], verts[1:]
    for k in range(0, len(rest)):
        for extra in combinations(rest, k):
            x = {anchor, *extra}
            y = set(verts) - x
            if not y:
                continue
            e = sum(1 for u in x for w in nb[u] if w in y)
            r = Fraction(e, len(x) * len(y))
            if best is None or r < best:
                best = r
    return best


def count_paths(nb, x, y, internal):
    """x..y paths with exactly ``internal`` inner vertices, by DFS."""
    total = 0

    def rec(cur, used, left):
        nonlocal total
        if left == 0:
            total += y in nb[cur]
            return
        for w in nb[cur]:
            if w not in used and w != y:
                rec(w, used | {w}, left - 1)

    rec(x, {x}, internal)
    return total


def odd_cycles_through(nb, v, length):
    """Cycles of the given length through v, each counted once."""
    others = [u for u in nb if u != v]
    count = 0
    for combo in permutations(others, length - 1):
        seq = (v,) + combo
        if all(seq[i + 1] in nb[seq[i]] for i in range(length - 1)) and v in nb[seq[-1]]:
            count += 1
    return count // 2


def density(nb, a, b) -> Fraction:
    e = sum(1 for u in a for w in nb[u] if w in b)
    return Fraction(e, len(a) * len(b))


def irregular_witness_exists(nb, a, b, eps) -> bool:
    """Any |A'| >= eps|A|, |B'| >= eps|B| with density deviating by >= eps."""
    eps = Fraction(eps)
    base = density(nb, a, b)
    for ka in range(1, len(a) + 1):
        if ka < eps * len(a):
            continue
        for kb in range(1, len(b) + 1):
            if kb < eps * len(b):
                continue
            for sa in combinations(a, ka):
                for sb in combinations(b, kb):
                    if abs(density(nb, sa, sb) - base) >= eps:
                        return True
    return False


def perfect_matching_exists(nb, verts) -> bool:
    verts = sorted(verts)
    if not verts:
        return True
    v, rest = verts[0], verts[1:]
    return any(perfect_matching_exists(nb, [w for w in rest if w != u]) for u in rest if u in nb[v])


def connected(nb, verts) -> bool:
    verts = set(verts)
    if not verts:
        return True
    start = min(verts)
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in nb[u]:
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def is_path(nb, seq) -> bool:
    return len(set(seq)) == len(seq) and all(seq[i + 1] in nb[seq[i]] for i in range(len(seq) - 1))
