import pytest

from monocycle.extremal import FamilyKind, GenSpec, build_f9, build_family, random_instance
from monocycle.graph import (Color, ColoredGraph, ParseError, degree_report, dumps, dumps_json,
                             load_graph, loads, loads_json, markov_bounds)


def complete(n, lab="R"):
    return ColoredGraph.from_edges(n, [(u, v, lab) for u in range(n) for v in range(u + 1, n)])


def test_load_mixed_colors():
    g = loads("n=3\n0 1 R\n1 2 B\n")
    assert g.n == 3
    assert g.label(0, 1) == "R" and g.label(1, 2) == "B"
    assert not g.has_edge(0, 2)


def test_load_bicolored_edge():
    g = loads("n=2\n0 1 RB\n")
    assert g.has_edge(0, 1, Color.RED) and g.has_edge(0, 1, Color.BLUE)
    assert g.label(0, 1) == "RB"


def test_comments_and_blank_lines():
    g = loads("# header\nn=3\n\n0 1 R # trailing\n")
    assert g.edges() == [(0, 1, "R")]


@pytest.mark.parametrize("text, needle", [
    ("n=3\n0 3 R\n", "line 2"),
    ("n=3\n0 0 R\n", "loop"),
    ("n=3\n0 1 R\n1 0 B\n", "conflicting"),
    ("n=3\n0 1 G\n", "bad color"),
    ("0 1 R\n", "line 1"),
    ("n=3\n0 1\n", "line 2"),
])
def test_parse_errors_name_the_line(text, needle):
    with pytest.raises(ParseError, match=needle):
        loads(text)


def test_duplicate_edge_same_color_is_fine():
    assert loads("n=2\n0 1 R\n1 0 R\n").edges() == [(0, 1, "R")]


def test_canonical_round_trip():
    g = random_instance(GenSpec(FamilyKind.RANDOM_DENSE, 12, seed=4, delta_min=6))
    assert loads(dumps(g)) == g
    assert loads_json(dumps_json(g)) == g
    assert dumps(loads(dumps(g))) == dumps(g)


def test_json_layout_is_fixed():
    g = loads("n=3\n1 2 B\n0 1 RB\n")
    assert dumps_json(g) == '{"n":3,"edges":[[0,1,"RB"],[1,2,"B"]]}'


def test_load_graph_from_path(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("n=2\n0 1 B\n")
    assert load_graph(str(p)).label(0, 1) == "B"
    assert load_graph('{"n":2,"edges":[[0,1,"R"]]}').label(0, 1) == "R"


def test_degree_report_f9():
    assert degree_report(build_f9()).delta == 7


def test_degree_report_all_red_k5():
    r = degree_report(complete(5))
    assert (r.delta, r.delta_red, r.delta_blue) == (4, 4, 0)


def test_degree_report_f1_n8():
    assert degree_report(build_family(GenSpec(FamilyKind.F1, 8))).delta == 5


def test_degree_report_empty_graph():
    r = degree_report(ColoredGraph.empty(0))
    assert r.empty and r.delta == 0


def test_bicolored_edge_counts_in_both_colors():
    g = loads("n=3\n0 1 RB\n1 2 R\n")
    r = degree_report(g)
    assert r.per_vertex[1] == (2, 2, 1)


def test_markov_examples():
    assert markov_bounds([1, 1, 4], 2).bound_geq == 3
    assert markov_bounds([3, 3, 3], 3).bound_geq == 3
    b = markov_bounds([0, 2, 4], 1, 4)
    assert b.leq_applicable and b.bound_leq == 2


def test_markov_part_two_inapplicable():
    b = markov_bounds([3, 3, 3], 3, 5)  # mean equals max
    assert not b.leq_applicable and b.bound_leq is None
    assert b.bound_geq == 3


def test_color_parsing():
    assert Color.parse("red") is Color.RED and Color.parse("2") is Color.BLUE
    assert Color.RED.other is Color.BLUE
    with pytest.raises(ValueError):
        Color.parse("green")


def test_asymmetric_adjacency_rejected():
    with pytest.raises(ValueError):
        ColoredGraph(2, (0b10, 0), (0, 0))
