import pytest

from monocycle.exact import exact_partition
from monocycle.extremal import (ColorPolicy, FamilyKind, GenerationError, GenSpec, admissible, build_f9,
                                build_family, coloring_from_index, family_parts, num_colorings,
                                random_instance, sharp_degree)
from monocycle.graph import degree_report


def test_f9_shape():
    g = build_f9()
    assert g.n == 9 and len(g.edges()) == 32
    assert degree_report(g).delta == 7
    # complement is z1z4, z3z2, x1y2, x2y1 in the fixed vertex order
    missing = {(u, v) for u in range(9) for v in range(u + 1, 9) if not g.has_edge(u, v)}
    assert missing == {(5, 8), (6, 7), (0, 4), (1, 3)}


def test_f9_colors():
    g = build_f9()
    x1, x2, x3, y1, y2, z1, z2, z3, z4 = range(9)
    assert all(g.label(x, z) == "R" for x in (x1, x2, x3) for z in (z1, z2, z3, z4))
    assert all(g.label(y, z) == "B" for y in (y1, y2) for z in (z1, z2, z3, z4))
    assert g.label(y1, y2) == "R" and g.label(x3, y1) == "R" and g.label(x1, y1) == "B"
    assert g.label(z1, z3) == "R" and g.label(z1, z2) == "B"


@pytest.mark.parametrize("kind, n, delta", [
    (FamilyKind.F1, 8, 5), (FamilyKind.F3, 9, 5), (FamilyKind.F2, 10, 6)])
def test_family_degrees(kind, n, delta):
    assert degree_report(build_family(GenSpec(kind, n))).delta == delta


def test_family_degrees_match_closed_form_up_to_40():
    for kind in (FamilyKind.F1, FamilyKind.F2, FamilyKind.F3):
        for n in range(5, 41):
            if admissible(kind, n):
                assert degree_report(build_family(GenSpec(kind, n))).delta == sharp_degree(n)


def test_policies_change_labels_only():
    for kind, n in ((FamilyKind.F1, 11), (FamilyKind.F2, 12), (FamilyKind.F3, 13)):
        graphs = [build_family(GenSpec(kind, n, seed=5, arbitrary_color_policy=p)) for p in ColorPolicy]
        shapes = {tuple((u, v) for u, v, _ in g.edges()) for g in graphs}
        assert len(shapes) == 1
        assert graphs[0] != graphs[1]


def test_inadmissible_sizes():
    with pytest.raises(GenerationError):
        family_parts(FamilyKind.F1, 7)
    with pytest.raises(GenerationError):
        family_parts(FamilyKind.F3, 12)
    with pytest.raises(GenerationError):
        family_parts(FamilyKind.F3, 5)


def test_random_instance_deterministic():
    spec = GenSpec(FamilyKind.RANDOM_DENSE, 12, seed=7, delta_min=10)
    assert random_instance(spec) == random_instance(spec)


def test_random_instance_degree_floor():
    for seed in range(100):
        g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 12, seed=seed, delta_min=10))
        assert degree_report(g).delta >= 10


def test_random_instance_infeasible_floor():
    with pytest.raises(GenerationError):
        random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 5, delta_min=5))


def test_random_instance_n16_partitionable():
    assert exact_partition(random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 16, seed=1, delta_min=13))) is not None


def test_coloring_enumeration():
    assert num_colorings(4) == 64
    assert coloring_from_index(4, 0).label(0, 1) == "R"
    assert coloring_from_index(4, 1).label(0, 1) == "B"
    assert coloring_from_index(4, 63).is_complete()
