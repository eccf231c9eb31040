import pytest

from monocycle.absorbing import (AbsorberFamily, AbsorbingParams, AbsorptionError, SelectionConfig,
                                 TupleSpace, Universe, absorb, build_absorbing_path, check_path,
                                 count_pair_absorbers, count_vertex_absorbers, pair_gadget_links,
                                 pair_gadget_plan, select_absorber_family, vertex_gadget_absorbs,
                                 vertex_gadget_links, vertex_gadget_plan, vertex_universe, walk_links)
from monocycle.exact import CapacityError, PreconditionError
from monocycle.graph import Color, ColoredGraph, SimpleGraph

from oracles import neighbour_sets, odd_cycles_through


def red_complete(n):
    return ColoredGraph.from_edges(n, [(u, v, "R") for u in range(n) for v in range(u + 1, n)])


def bipartite(a, b):
    return SimpleGraph.from_edges(a + b, [(u, v) for u in range(a) for v in range(a, a + b)])


def cycle(n):
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def family(*tuples):
    per = {}
    for t in tuples:
        per[len(t)] = per.get(len(t), 0) + 1
    return AbsorberFamily(tuple(tuples), per, 1, 1)


def test_vertex_absorber_counts():
    assert count_vertex_absorbers(red_complete(5), 0, 1, Color.RED) == {1: 6}
    assert count_vertex_absorbers(bipartite(3, 3), 0) == {1: 0, 2: 0}
    assert count_vertex_absorbers(cycle(5), 2) == {1: 0, 2: 1}
    with pytest.raises(CapacityError):
        count_vertex_absorbers(cycle(5), 0, 3)


def test_vertex_absorber_counts_match_permutation_count():
    g = ColoredGraph.from_edges(7, [(u, v, "R") for u in range(7) for v in range(u + 1, 7) if (u * v + u) % 3])
    nb = neighbour_sets(g, "R")
    for v in range(7):
        got = count_vertex_absorbers(g, v, 2, Color.RED)
        assert got == {1: odd_cycles_through(nb, v, 3), 2: odd_cycles_through(nb, v, 5)}


def test_pair_absorber_counts():
    assert count_pair_absorbers(cycle(6), 0, 3) == {1: 1}
    assert count_pair_absorbers(bipartite(2, 2), 0, 2) == {1: 0}
    # K33: arcs x-a-b-y with a in Y\{y}, b in X\{x}; two disjoint arcs, unordered
    assert count_pair_absorbers(bipartite(3, 3), 0, 3) == {1: 2}
    with pytest.raises(PreconditionError):
        count_pair_absorbers(bipartite(3, 3), 0, 1, sides=((0, 1, 2), (3, 4, 5)))


def test_select_single_tuple():
    u = Universe([TupleSpace.from_list(2, [(1, 2)])], [0], lambda t, x: True)
    fam = select_absorber_family(u, 0, SelectionConfig(family_size=1))
    assert fam.tuples == ((1, 2),)


def test_select_k20_triangles_validates():
    view = red_complete(20).view(Color.RED)
    u = vertex_universe(view)
    fam = select_absorber_family(u, 3, SelectionConfig(family_size=4, coverage_floor=2))
    used = [v for t in fam.tuples for v in t]
    assert len(used) == len(set(used))
    absorbs = vertex_gadget_absorbs(view)
    for x in range(20):
        if x not in used:
            assert sum(absorbs(t, x) for t in fam.tuples) >= 2


def test_select_reports_unabsorbable_target():
    u = Universe([TupleSpace.from_list(2, [(1, 2)])], [0, 7], lambda t, x: x == 0)
    with pytest.raises(PreconditionError, match="7"):
        select_absorber_family(u, 0)


def test_build_k40_five_triangle_gadgets():
    g = red_complete(40)
    fam = family((0, 1), (2, 3), (4, 5), (6, 7), (8, 9))
    ap = build_absorbing_path(g, AbsorbingParams(ell=1), seed=0, color=Color.RED, family=fam)
    assert len(ap.registry) == 5
    assert len(ap.path) <= 5 * (2 + 3 * 3)
    assert check_path(g.view(Color.RED), ap.path)


def test_build_bipartite_k12_12():
    g = ColoredGraph.from_edges(24, [(u, v, "R") for u in range(12) for v in range(12, 24)])
    ap = build_absorbing_path(g, AbsorbingParams(), seed=0, color=Color.RED, variant="pair",
                              bipartition=(range(12), range(12, 24)))
    host = g.view(Color.RED)
    assert check_path(host, ap.path)
    s1, t1 = ap.side_sets
    assert not set(s1 + t1) & set(ap.path)
    assert set(s1) <= set(range(12)) and set(t1) <= set(range(12, 24))


def test_empty_family_gives_empty_path():
    ap = build_absorbing_path(red_complete(10), AbsorbingParams(gadgets=0), seed=0, color=Color.RED)
    assert ap.path == () and ap.registry == ()


def test_absorb_triangle_gadget_inserts_between_tuple_vertices():
    g = red_complete(12)
    ap = build_absorbing_path(g, AbsorbingParams(), seed=0, color=Color.RED, family=family((3, 7)))
    assert ap.path == (3, 7)
    assert absorb(g, ap, [5], Color.RED) == (3, 5, 7)


def test_absorb_nothing():
    g = red_complete(12)
    ap = build_absorbing_path(g, AbsorbingParams(), seed=1, color=Color.RED)
    assert absorb(g, ap, [], Color.RED) == ap.path


def test_absorb_i2_gadget():
    g = red_complete(14)
    ap = build_absorbing_path(g, AbsorbingParams(ell=2), seed=0, color=Color.RED, family=family((1, 2, 3, 4)))
    out = absorb(g, ap, [9], Color.RED)
    assert out[0] == ap.path[0] and out[-1] == ap.path[-1]
    assert set(out) == set(ap.path) | {9}
    assert check_path(g.view(Color.RED), out)


def test_absorb_rejects_overlap_and_stranded():
    g = red_complete(12)
    ap = build_absorbing_path(g, AbsorbingParams(), seed=0, color=Color.RED, family=family((3, 7)))
    with pytest.raises(PreconditionError):
        absorb(g, ap, [3], Color.RED)
    with pytest.raises(AbsorptionError):
        absorb(g, ap, [0, 1], Color.RED)


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_vertex_gadget_reroute_keeps_segment_ends(i):
    t = tuple(range(1, 2 * i + 1))
    first, last, conns = vertex_gadget_plan(t)
    connectors = {pq: pq for pq in conns}
    before = walk_links(vertex_gadget_links(t, connectors), first)
    after = walk_links(vertex_gadget_links(t, connectors, 0), first)
    assert before[-1] == after[-1] == last
    assert sorted(after) == sorted(before + [0])


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_pair_gadget_reroute_keeps_segment_ends(j):
    t = tuple(range(2, 4 * j + 2))
    first, last, conns = pair_gadget_plan(t)
    connectors = {pq: pq for pq in conns}
    before = walk_links(pair_gadget_links(t, connectors), first)
    after = walk_links(pair_gadget_links(t, connectors, (0, 1)), first)
    assert before[-1] == after[-1] == last
    assert sorted(after) == sorted(before + [0, 1])
