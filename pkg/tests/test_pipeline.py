import random

import pytest

from monocycle.exact import PreconditionError, exact_partition, verify_partition
from monocycle.extremal import FamilyKind, GenSpec, build_f9, random_instance
from monocycle.graph import Color, ColoredGraph, SimpleGraph
from monocycle.pipeline import (PipelineConfig, heuristic_partition, rotation_cycle,
                                structure_decompose, validate_nice_partition)


def red_complete(n):
    return ColoredGraph.from_edges(n, [(u, v, "R") for u in range(n) for v in range(u + 1, n)])


def halves_instance(n=20):
    """Red complete bipartite between halves, blue cliques inside them, blue matching across."""
    h = n // 2
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if (u < h) == (v < h):
                edges.append((u, v, "B"))
            else:
                edges.append((u, v, "RB" if v == u + h else "R"))
    return ColoredGraph.from_edges(n, edges)


def test_nice_single_red_clique():
    v = validate_nice_partition(red_complete(10), [(Color.RED, range(10))], 0.2, 0.05)
    assert v.valid and not v.evidence[0].near_bipartite


def test_nice_not_covering():
    v = validate_nice_partition(red_complete(10), [(Color.RED, range(9))], 0.2, 0.05)
    assert not v.valid and v.reason == "not covering"


def test_nice_near_bipartite_without_partner():
    g = ColoredGraph.from_edges(12, [(u, v, "R") for u in range(6) for v in range(6, 12)])
    v = validate_nice_partition(g, [(Color.RED, range(12))], 0.2, 0.05)
    assert not v.valid and "clause (ii)" in v.reason


def test_structure_all_red_k20():
    out = structure_decompose(red_complete(20), PipelineConfig(gamma=0.2), seed=0)
    assert out.variant == "SingleRobust"
    assert out.result.vertices == tuple(range(20)) and not out.result.near_bipartite
    assert out.result.certificate.robust


def test_structure_halves_gives_nice_pair():
    g = halves_instance()
    out = structure_decompose(g, PipelineConfig(), seed=0)
    assert out.variant == "NicePair"
    ev = out.result.evidence
    assert ev.valid
    red = [e for e in ev.evidence if e.color is Color.RED][0]
    assert red.near_bipartite and red.partner is not None and red.bipartite_certificate.robust
    # evidence is recomputable from the graph
    again = validate_nice_partition(g, out.result.members, 0.2, 0.05)
    assert again.valid


def test_structure_below_degree_floor():
    g = ColoredGraph.from_edges(10, [(i, (i + 1) % 10, "R") for i in range(10)])
    with pytest.raises(PreconditionError):
        structure_decompose(g, PipelineConfig(), seed=0)


def test_structure_trace_records_measurements():
    out = structure_decompose(red_complete(20), PipelineConfig(gamma=0.2), seed=0)
    steps = [t["step"] for t in out.trace]
    assert "shifted-constants" in steps and "extreme-sets" in steps


def test_direct_partition_on_halves_without_matching():
    n, h = 20, 10
    g = ColoredGraph.from_edges(n, [(u, v, "R" if (u < h) != (v < h) else "B")
                                    for u in range(n) for v in range(u + 1, n)])
    out = structure_decompose(g, PipelineConfig(), seed=0)
    assert out.variant == "DirectPartition"
    assert verify_partition(g, out.result.partition)


def test_heuristic_all_red_k30():
    g = red_complete(30)
    res = heuristic_partition(g, PipelineConfig(), seed=1)
    assert res.partition is not None and verify_partition(g, res.partition)
    assert sorted(res.partition.red) == list(range(30)) and res.partition.blue == ()
    assert res.method != "exact-fallback"


def test_heuristic_f9():
    res = heuristic_partition(build_f9(), PipelineConfig(), seed=0)
    assert res.partition is None


def test_heuristic_matches_exact_n18():
    g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 18, seed=5, delta_min=15))
    res = heuristic_partition(g, PipelineConfig(), seed=5)
    assert (res.partition is not None) == (exact_partition(g) is not None)
    if res.partition is not None:
        assert verify_partition(g, res.partition)


def test_heuristic_without_fallback_never_lies():
    cfg = PipelineConfig(fallback=False)
    for seed in range(10):
        g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 14, seed=seed, delta_min=11))
        res = heuristic_partition(g, cfg, seed=seed)
        if res.partition is not None:
            assert verify_partition(g, res.partition)
            assert exact_partition(g) is not None


def test_rotation_cycle_on_dense_graph():
    rng = random.Random(0)
    n = 40
    g = SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.7])
    cyc, left = rotation_cycle(g, g.full, random.Random(1))
    assert cyc is not None and left == 0
    assert sorted(cyc) == list(range(n))
    assert all(g.has_edge(cyc[i], cyc[(i + 1) % n]) for i in range(n))


def test_config_round_trip():
    cfg = PipelineConfig(gamma=0.1, gadgets=4)
    assert PipelineConfig.from_json_obj(cfg.to_json_obj()) == cfg
