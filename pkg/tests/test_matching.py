import random

import pytest

from monocycle.exact import PreconditionError, hamiltonian_cycle
from monocycle.extremal import random_coloring
from monocycle.graph import Color, ColoredGraph, SimpleGraph, to_mask
from monocycle.matching import (Matching, PartitionedHost, chvatal_hamiltonian, connected_matching,
                                hamiltonian_biconnected_check, multipartite_perfect_matching,
                                stripped_graph, validate_matching)


def kn(n):
    return SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def kab(*sizes):
    """Complete multipartite graph with consecutive parts."""
    parts, start = [], 0
    for s in sizes:
        parts.append(tuple(range(start, start + s)))
        start += s
    where = {v: i for i, p in enumerate(parts) for v in p}
    g = SimpleGraph.from_edges(start, [(u, v) for u in range(start) for v in range(u + 1, start)
                                       if where[u] != where[v]])
    return g, tuple(parts)


def is_cycle(g, cyc, n):
    return sorted(cyc) == list(range(n)) and all(g.has_edge(cyc[i], cyc[(i + 1) % n]) for i in range(n))


def test_chvatal_k4():
    r = chvatal_hamiltonian(kn(4))
    assert r.condition_met and is_cycle(kn(4), r.cycle, 4)


def test_chvatal_c5_makes_no_claim():
    c5 = SimpleGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    r = chvatal_hamiltonian(c5)
    assert not r.condition_met and r.cycle is None and r.failing_index == 2


def test_chvatal_bipartite_k33():
    g, (s, t) = kab(3, 3)
    r = chvatal_hamiltonian(g, sides=(s, t))
    assert r.condition_met and is_cycle(g, r.cycle, 6)


def test_chvatal_size_preconditions():
    with pytest.raises(PreconditionError):
        chvatal_hamiltonian(kn(2))
    g, (s, t) = kab(2, 3)
    with pytest.raises(PreconditionError):
        chvatal_hamiltonian(g, sides=(s, t))


def test_chvatal_large_dense_graph_uses_closure():
    rng = random.Random(3)
    n = 60
    g = SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.8])
    r = chvatal_hamiltonian(g)
    assert r.condition_met and is_cycle(g, r.cycle, n)


def test_chvatal_never_claims_nonhamiltonian():
    for seed in range(200):
        rng = random.Random(seed)
        n = rng.randint(3, 10)
        p = rng.choice([0.4, 0.6, 0.8])
        g = SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        r = chvatal_hamiltonian(g)
        if r.condition_met:
            assert hamiltonian_cycle(g) is not None
            assert is_cycle(g, r.cycle, n)


def test_biconnected_k44_minus_matching_is_outside_guarantee():
    g = SimpleGraph.from_edges(8, [(u, v) for u in range(4) for v in range(4, 8) if v != u + 4])
    r = hamiltonian_biconnected_check(g, range(4), range(4, 8), 0, 5)
    assert r.label == "outside-guarantee" and r.failed_floor is not None
    assert sorted(r.path) == list(range(8)) and r.path[0] == 0 and r.path[-1] == 5
    assert all(g.has_edge(a, b) for a, b in zip(r.path, r.path[1:]))


def test_biconnected_k33_guaranteed():
    g, (s, t) = kab(3, 3)
    r = hamiltonian_biconnected_check(g, s, t, 1, 4)
    assert r.label == "guaranteed"
    assert r.path[0] == 1 and r.path[-1] == 4 and sorted(r.path) == list(range(6))


def test_biconnected_single_edge():
    g = SimpleGraph.from_edges(2, [(0, 1)])
    r = hamiltonian_biconnected_check(g, [0], [1], 0, 1)
    assert r.path == (0, 1)


def test_biconnected_unbalanced():
    g, (s, t) = kab(2, 3)
    with pytest.raises(PreconditionError, match="unbalanced"):
        hamiltonian_biconnected_check(g, s, t, 0, 2)


@pytest.mark.parametrize("sizes", [(2, 2, 2), (3, 3)])
def test_multipartite_examples(sizes):
    g, parts = kab(*sizes)
    m = multipartite_perfect_matching(PartitionedHost(g, parts))
    assert len(m) == 3 and m.connected
    assert validate_matching(g, m)


@pytest.mark.parametrize("sizes, needle", [
    ((4, 1, 1), "exceeds n/2"), ((2, 2, 1), "odd"), ((1, 1, 1, 1, 1, 1), "degree floor")])
def test_multipartite_preconditions(sizes, needle):
    g, parts = kab(*sizes)
    if needle == "degree floor":
        g = SimpleGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    with pytest.raises(PreconditionError, match=needle):
        multipartite_perfect_matching(PartitionedHost(g, parts))


def test_multipartite_intra_part_edge():
    g, parts = kab(3, 3)
    g = SimpleGraph.from_edges(6, g.edges() + [(0, 1)])
    with pytest.raises(PreconditionError, match="inside a part"):
        multipartite_perfect_matching(PartitionedHost(g, parts))


def test_connected_matching_all_red_k6():
    g = ColoredGraph.from_edges(6, [(u, v, "R") for u in range(6) for v in range(u + 1, 6)])
    rep = connected_matching(g, range(6), [0])
    assert rep.case == "ii-multipartite"
    assert len(rep.matching) == 3 and set(rep.matching.colors) == {Color.RED}
    assert validate_matching(g, rep.matching, to_mask(range(6)), 1)


def test_connected_matching_case_i_on_k8():
    g = random_coloring(8, seed=2)
    red, blue = g.view(Color.RED), g.view(Color.BLUE)
    assert red.is_connected() and blue.is_connected()
    rep = connected_matching(g, range(8), range(8))
    assert rep.case == "i" and len(rep.matching) == 4
    assert validate_matching(g, rep.matching, g.full, g.full)


def test_connected_matching_odd_n():
    g = ColoredGraph.from_edges(5, [(u, v, "R") for u in range(5) for v in range(u + 1, 5)])
    with pytest.raises(PreconditionError, match="odd"):
        connected_matching(g, range(5), [0])


def test_connected_matching_rejects_non_components():
    g = random_coloring(8, seed=2)
    with pytest.raises(PreconditionError):
        connected_matching(g, range(4), range(8))


def test_stripped_graph_drops_foreign_color_on_private_edges():
    g = ColoredGraph.from_edges(4, [(0, 1, "RB"), (2, 3, "RB"), (1, 2, "R")])
    h1, h2 = to_mask([0, 1, 2]), to_mask([2, 3])
    s = stripped_graph(g, h1, h2)
    assert s.label(0, 1) == "R" and s.label(2, 3) == "RB" and s.label(1, 2) == "R"


def test_validate_matching_reasons():
    g = ColoredGraph.from_edges(4, [(0, 1, "R"), (2, 3, "B"), (1, 2, "B")])
    assert validate_matching(g, Matching(((0, 1), (1, 2)))).reason == "not-disjoint"
    assert validate_matching(g, Matching(((0, 2),))).reason == "missing-edge"
    assert validate_matching(g, Matching(((0, 1),), (Color.BLUE,))).reason == "wrong-color"
