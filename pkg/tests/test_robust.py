from fractions import Fraction

import pytest

from monocycle.exact import CapacityError, PreconditionError
from monocycle.extremal import build_f9
from monocycle.graph import Color, ColoredGraph, SimpleGraph, to_mask
from monocycle.robust import (clean_sparse_cut, extreme_vertices, find_sparse_cut, make_cut,
                              maximal_extension, near_bipartition, robust_certificate, robust_partition)

from oracles import min_cut_ratio, neighbour_sets


def kn(n, offset=0):
    return [(offset + u, offset + v) for u in range(n) for v in range(u + 1, n)]


def cliques_with_bridges(sizes, bridges):
    edges, start, starts = [], 0, []
    for s in sizes:
        starts.append(start)
        edges += kn(s, start)
        start += s
    return SimpleGraph.from_edges(start, edges + bridges), starts


def cycle(n):
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def two_k5():
    return cliques_with_bridges([5, 5], [(0, 5)])[0]


def two_k8():
    return cliques_with_bridges([8, 8], [(0, 8), (1, 9)])[0]


def test_sparse_cut_two_k5():
    cut = find_sparse_cut(two_k5(), alpha=0.2)
    assert cut.crossing == 1 and cut.ratio == Fraction(1, 25)
    assert set(cut.X) in ({0, 1, 2, 3, 4}, {5, 6, 7, 8, 9})


def test_no_sparse_cut_in_k10():
    assert find_sparse_cut(SimpleGraph.from_edges(10, kn(10)), alpha=0.99) is None


def test_sparse_cut_c8():
    cut = find_sparse_cut(cycle(8), alpha=0.3)
    assert cut.crossing == 2 and len(cut.X) * len(cut.Y) == 16 and cut.ratio == Fraction(1, 8)
    xs = sorted(cut.X)
    assert all((b - a) % 8 == 1 for a, b in zip(xs, xs[1:])) or len(set(xs) ^ set(range(8))) == 4


def test_exact_cap():
    with pytest.raises(CapacityError):
        find_sparse_cut(SimpleGraph.from_edges(25, kn(25)), alpha=0.5, mode="exact")


def test_heuristic_finds_obvious_cut():
    g, _ = cliques_with_bridges([15, 15], [(0, 15)])
    cut = find_sparse_cut(g, alpha=0.05, mode="heuristic", seed=2)
    assert cut is not None and cut.crossing == 1


def test_certificates():
    k8 = SimpleGraph.from_edges(8, kn(8))
    assert robust_certificate(k8, eta=0.8, alpha=0.9, ambient_n=8).robust
    c5 = robust_certificate(cycle(5), eta=0.4, alpha=0.1, ambient_n=5)
    assert c5.robust and c5.min_degree == 2
    bad = robust_certificate(two_k5(), eta=0.4, alpha=0.2, ambient_n=10)
    assert not bad.robust and bad.sparse_cut.ratio == Fraction(1, 25)


def test_heuristic_no_cut_is_not_conclusive():
    g = SimpleGraph.from_edges(26, kn(26))
    cert = robust_certificate(g, eta=0.5, alpha=0.1, mode="auto")
    assert cert.robust and cert.mode == "heuristic" and not cert.conclusive


def test_single_vertex_is_vacuously_robust():
    cert = robust_certificate(SimpleGraph.from_edges(3, []), domain=[1], eta=Fraction(1, 3), alpha=0.5)
    assert cert.robust


def test_robust_partition_examples():
    assert robust_partition(SimpleGraph.from_edges(12, kn(12)), 0.5, 0.001) == [tuple(range(12))]
    parts = robust_partition(two_k8(), 0.4, 0.05)
    assert sorted(map(len, parts)) == [8, 8]
    g, _ = cliques_with_bridges([6, 6, 6], [(0, 6), (7, 12), (13, 1)])
    assert sorted(map(len, robust_partition(g, 0.25, 0.05))) == [6, 6, 6]


def test_robust_partition_degree_precondition():
    with pytest.raises(PreconditionError):
        robust_partition(cycle(10), 0.5, 0.01)


def test_clean_sparse_cut_keeps_clean_split():
    g = two_k8()
    b = clean_sparse_cut(g, 0.4, 0.1, make_cut(g, to_mask(range(8)), to_mask(range(8, 16))))
    assert {b.S1, b.S2} == {tuple(range(8)), tuple(range(8, 16))}


def test_clean_sparse_cut_moves_misplaced_vertex_back():
    g = two_k8()
    x = to_mask([*range(7), 8])
    b = clean_sparse_cut(g, 0.4, 0.25, make_cut(g, x, g.full ^ x))
    assert {b.S1, b.S2} == {tuple(range(8)), tuple(range(8, 16))}


def test_clean_sparse_cut_rejects_dense_cut():
    g = SimpleGraph.from_edges(10, kn(10))
    with pytest.raises(PreconditionError):
        clean_sparse_cut(g, 0.5, 0.1, make_cut(g, to_mask(range(5)), to_mask(range(5, 10))))


def k5_plus_vertex():
    return SimpleGraph.from_edges(6, kn(5) + [(5, 0), (5, 1), (5, 2)])


def test_maximal_extension():
    assert maximal_extension(k5_plus_vertex(), range(5), 0.5) == tuple(range(6))
    assert maximal_extension(k5_plus_vertex(), range(5), 0.7) == tuple(range(5))
    assert maximal_extension(k5_plus_vertex(), range(6), 0.9) == tuple(range(6))


def test_near_bipartition_examples():
    k55 = SimpleGraph.from_edges(10, [(u, v) for u in range(5) for v in range(5, 10)])
    b = near_bipartition(k55, 0.5, 0.1)
    assert b.inside_edges == (0, 0)
    assert near_bipartition(SimpleGraph.from_edges(10, kn(10)), 0.5, 0.05) is None
    b = near_bipartition(cycle(12), 0.1, 0.01)
    assert {b.S1, b.S2} == {tuple(range(0, 12, 2)), tuple(range(1, 12, 2))}


def test_extreme_vertices():
    red6 = ColoredGraph.from_edges(6, [(u, v, "R") for u, v in kn(6)])
    assert extreme_vertices(red6, 1, Color.RED) == tuple(range(6))
    assert extreme_vertices(red6, 1, Color.BLUE) == ()
    f9 = build_f9()
    expect = tuple(v for v in range(9) if f9.degree(v, Color.BLUE) < 3)
    assert extreme_vertices(f9, 3, Color.RED) == expect


def test_exact_cut_matches_naive_enumeration():
    import random
    for seed in range(15):
        rng = random.Random(seed)
        n = rng.randint(2, 11)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = SimpleGraph.from_edges(n, edges)
        cg = ColoredGraph.from_edges(n, [(u, v, "R") for u, v in edges])
        ref = min_cut_ratio(neighbour_sets(cg), range(n))
        cut = find_sparse_cut(g, alpha=2)
        assert cut.ratio == ref
