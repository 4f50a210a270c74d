import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ibds import (
    ContentionGraph,
    GraphFormatError,
    build_network,
    build_stream_graph,
    parse_graph,
    serialize_graph,
)
from helpers import complete_graph, path_graph, random_graph


def test_degree_isolated_vertex():
    g = ContentionGraph(1, [])
    assert g.degree(0) == 0


def test_degree_triangle():
    g = complete_graph(3)
    assert g.degree(1) == 2


def test_degree_isolated_link_streams():
    # one physical link expanded to two streams: each stream sees the other
    net = build_network(2, seed=0, tx_radius=2.0)
    assert len(net.links) == 1
    g, _ = build_stream_graph(net, 2)
    assert g.n == 2 and g.m == 1
    assert g.degree(0) == 1 and g.degree(1) == 1
    assert g.families[0] == (0, 1)


def test_degree_out_of_range():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        g.degree(3)
    with pytest.raises(ValueError):
        g.induced_degree({0}, -1)


def test_induced_degree_k4_full_set():
    g = complete_graph(4)
    full = set(range(4))
    for v in range(4):
        assert g.induced_degree(full, v) == 3


def test_induced_degree_path_endpoints():
    g = path_graph(3)
    assert g.induced_degree({0, 2}, 1) == 2


def test_induced_degree_matches_edge_scan():
    g = random_graph(10, 0.4, seed=3)
    chosen = {0, 2, 3, 7, 9}
    for v in range(10):
        # independent oracle: count via the edge set, not adjacency lists
        expect = sum(
            1 for u in chosen if u != v and (min(u, v), max(u, v)) in g.edges
        )
        assert g.induced_degree(chosen, v) == expect


def test_induced_degree_of_full_set_is_degree():
    g = random_graph(15, 0.3, seed=11)
    full = set(range(15))
    for v in range(15):
        assert g.induced_degree(full, v) == g.degree(v)


def test_adjacency_symmetric_and_sorted():
    g = random_graph(20, 0.3, seed=5)
    for v in range(20):
        ns = g.neighbors(v)
        assert list(ns) == sorted(ns)
        for u in ns:
            assert v in g.neighbors(u)


def test_constructor_rejects_self_loop_and_duplicates():
    with pytest.raises(ValueError, match="self-loop"):
        ContentionGraph(2, [(0, 0)])
    with pytest.raises(ValueError, match="duplicate edge"):
        ContentionGraph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError, match="out of range"):
        ContentionGraph(2, [(0, 2)])


def test_family_must_be_clique():
    with pytest.raises(ValueError, match="family 0 is not a clique"):
        ContentionGraph(2, [], families={0: [0, 1]})


def test_family_member_in_two_families():
    g_edges = [(0, 1), (1, 2), (0, 2)]
    with pytest.raises(ValueError, match="appears in families"):
        ContentionGraph(3, g_edges, families={0: [0, 1], 1: [1, 2]})


def test_family_pairs_are_adjacent():
    net = build_network(30, seed=4)
    g, _ = build_stream_graph(net, 3)
    for fid, members in g.families.items():
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                assert v in g.neighbors(u), (fid, u, v)


def test_family_superfamily_coverage_enforced():
    with pytest.raises(ValueError, match="do not share a superfamily"):
        ContentionGraph(
            2,
            [(0, 1)],
            families={0: [0, 1]},
            superfamilies={0: [0], 1: [1]},
        )


def test_same_family_requires_labels():
    g = ContentionGraph(3, [(0, 1)], families={0: [0, 1]}, superfamilies={0: [0, 1, 2]})
    assert g.same_family(0, 1)
    assert not g.same_family(0, 2)
    # an unlabeled vertex never matches, not even itself
    assert not g.same_family(2, 2)
    assert not g.same_family(2, 0)


# -- parsing ----------------------------------------------------------------


def test_parse_path_graph():
    g = parse_graph("3 2\n0 1\n1 2\n")
    assert g.n == 3 and g.m == 2
    assert g.edges == frozenset({(0, 1), (1, 2)})
    assert not g.has_families and not g.has_superfamilies


def test_parse_family_not_clique_names_line():
    text = "2 0\nfamily 0 : 0 1\n"
    with pytest.raises(GraphFormatError, match=r"line 2: family 0 is not a clique"):
        parse_graph(text)


def test_parse_asymmetric_edge():
    with pytest.raises(GraphFormatError, match=r"line 2: edge 1 0 must be declared with u < v"):
        parse_graph("2 1\n1 0\n")


def test_parse_reports_line_numbers():
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_graph("3 2\n0 1\nnot an edge\n")
    with pytest.raises(GraphFormatError, match="line 4"):
        parse_graph("3 2\n0 1\n1 2\nbogus directive\n")
    with pytest.raises(GraphFormatError, match="line 3: duplicate edge"):
        parse_graph("3 2\n0 1\n0 1\n")
    # comment lines still count toward line numbers
    with pytest.raises(GraphFormatError, match="line 4: duplicate edge"):
        parse_graph("3 2\n# comment\n0 1\n0 1\n")


def test_parse_missing_edges():
    with pytest.raises(GraphFormatError, match="expected 2 edge lines"):
        parse_graph("3 2\n0 1\n")


def test_parse_bad_header():
    with pytest.raises(GraphFormatError, match="header"):
        parse_graph("x y\n")
    with pytest.raises(GraphFormatError, match="missing header"):
        parse_graph("# nothing here\n")


FIXTURE = """\
# two links meeting at a shared physical node,
# streams expanded by hand

5 6
0 1
0 2
1 2

2 3
1 4
3 4

family 0 : 0 1 2
family 1 : 3 4

superfamily 0 : 0 1 2 3
superfamily 1 : 3 4
# end of fixture
"""

CANONICAL = """\
5 6
0 1
0 2
1 2
1 4
2 3
3 4
family 0 : 0 1 2
family 1 : 3 4
superfamily 0 : 0 1 2 3
superfamily 1 : 3 4
"""


def test_serialize_parse_fixture_is_canonical():
    assert serialize_graph(parse_graph(FIXTURE)) == CANONICAL


def test_parse_serialize_round_trip_fixture():
    g = parse_graph(FIXTURE)
    assert parse_graph(serialize_graph(g)) == g


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(1, 14))
def test_parse_serialize_round_trip_random(seed, n):
    g = random_graph(n, 0.35, seed)
    assert parse_graph(serialize_graph(g)) == g


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 500), q=st.integers(1, 3))
def test_parse_serialize_round_trip_stream_graphs(seed, q):
    net = build_network(12, seed=seed, tx_radius=0.4)
    g, _ = build_stream_graph(net, q)
    assert parse_graph(serialize_graph(g)) == g


def test_load_graph(tmp_path):
    from ibds import load_graph

    p = tmp_path / "g.graph"
    p.write_text(FIXTURE, encoding="utf-8")
    assert load_graph(p) == parse_graph(FIXTURE)
