import random

import pytest

from monocycle.exact import (CapacityError, CyclePartition, PathPairDecomposition, PreconditionError,
                             check_path_pair, exact_partition, gg_path_cycle, hamiltonian_cycle,
                             hamiltonian_path, verify_partition)
from monocycle.extremal import FamilyKind, GenSpec, build_f9, build_family, random_coloring, random_instance
from monocycle.graph import ColoredGraph, SimpleGraph

from oracles import partition_exists


def complete(n, lab="R"):
    return ColoredGraph.from_edges(n, [(u, v, lab) for u in range(n) for v in range(u + 1, n)])


def test_verify_all_red_k5():
    assert verify_partition(complete(5), CyclePartition((0, 1, 2, 3, 4), ()))


def test_verify_two_edge_cycles():
    g = ColoredGraph.from_edges(4, [(0, 1, "R"), (2, 3, "B")])
    assert verify_partition(g, CyclePartition((0, 1), (2, 3)))


@pytest.mark.parametrize("p, reason", [
    (CyclePartition((0, 1, 2), (2, 3)), "overlap"),
    (CyclePartition((0, 1, 2), ()), "not-spanning"),
    (CyclePartition((0, 1, 2, 3), ()), "wrong-color"),
    (CyclePartition((0, 1), (0, 1)), "overlap"),
    (CyclePartition((0, 0), (1, 2, 3)), "bad-degenerate-size"),
])
def test_verify_reason_codes(p, reason):
    g = ColoredGraph.from_edges(4, [(0, 1, "R"), (1, 2, "R"), (0, 2, "R"), (2, 3, "B"), (1, 3, "B"),
                                    (0, 3, "B")])
    v = verify_partition(g, p)
    assert not v and v.reason == reason


def test_verify_missing_edge():
    g = ColoredGraph.from_edges(4, [(0, 1, "R"), (1, 2, "R")])
    v = verify_partition(g, CyclePartition((0, 1, 2), (3,)))
    assert not v and v.reason == "missing-edge"


def test_f9_rejects_fuzzed_partitions():
    g = build_f9()
    rng = random.Random(0)
    for _ in range(300):
        perm = list(range(9))
        rng.shuffle(perm)
        cut = rng.randint(0, 9)
        assert not verify_partition(g, CyclePartition(tuple(perm[:cut]), tuple(perm[cut:])))


def test_exact_f9_has_no_partition():
    assert exact_partition(build_f9()) is None


@pytest.mark.parametrize("kind, n", [(FamilyKind.F1, 8), (FamilyKind.F2, 8), (FamilyKind.F3, 9)])
def test_exact_small_families(kind, n):
    assert exact_partition(build_family(GenSpec(kind, n))) is None


def test_exact_empty_graph():
    assert exact_partition(ColoredGraph.empty(0)) == CyclePartition((), ())


def test_exact_capacity():
    with pytest.raises(CapacityError, match="heuristic_partition"):
        exact_partition(ColoredGraph.empty(21))


def test_exact_returns_least_red_mask():
    # all-blue K4: the least red set is empty, blue is the 4-cycle from 0
    p = exact_partition(complete(4, "B"))
    assert p == CyclePartition((), (0, 1, 2, 3))


def test_exact_is_deterministic_and_sound():
    for seed in range(20):
        g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 9, seed=seed, delta_min=5))
        p1, p2 = exact_partition(g), exact_partition(g)
        assert p1 == p2
        assert (p1 is not None) == partition_exists(g)
        if p1 is not None:
            assert verify_partition(g, p1)


def test_random_dense_16_partitionable():
    g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 16, seed=1, delta_min=13))
    p = exact_partition(g)
    assert p is not None and verify_partition(g, p)


def test_hamiltonian_helpers():
    c5 = SimpleGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    cyc = hamiltonian_cycle(c5)
    assert sorted(cyc) == list(range(5))
    path = hamiltonian_path(c5, 0, 1)
    assert path == (0, 4, 3, 2, 1)
    assert hamiltonian_path(c5, 0, 2) is None


def test_gg_all_red_k4():
    d = gg_path_cycle(complete(4))
    assert d.red_path == (0, 1, 2, 3) and d.blue_path == ()


def test_gg_single_edge():
    d = gg_path_cycle(complete(2))
    assert d.red_path == (0, 1) and d.blue_path == ()


def test_gg_random_k10():
    g = random_coloring(10, seed=11)
    d = gg_path_cycle(g)
    assert check_path_pair(g, d)
    assert max(len(d.red_path), len(d.blue_path)) >= 5


def test_gg_requires_complete():
    with pytest.raises(PreconditionError):
        gg_path_cycle(ColoredGraph.from_edges(3, [(0, 1, "R")]))


def test_path_pair_checker_rejects_bad_colors():
    g = complete(4)
    assert not check_path_pair(g, PathPairDecomposition((0, 1), (2, 3)))
