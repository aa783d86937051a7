import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from oracles import to_nx
from recolor_lab.errors import DuplicateEdge, EmptySet, LoopRejected, ParseError, ZeroMultiplicity
from recolor_lab.graph import (
    Graph,
    are_isomorphic,
    blowup,
    complement,
    complete_bipartite,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    emit_edge_list,
    emit_graph6,
    empty_graph,
    induced_subgraph,
    is_connected,
    join,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path_graph,
    sibling,
    substitute,
)
from recolor_lab.patterns import DIAMOND


def test_rejects_asymmetric_or_looped_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])


def test_edge_list_roundtrip_and_canonical_order():
    g = parse_edge_list("3 2\n2 1\n0 1\n")
    assert g.edges() == [(0, 1), (1, 2)]
    assert emit_edge_list(g) == "3 2\n0 1\n1 2\n"


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("3 1\n1 1\n", LoopRejected, 2),
        ("3 2\n0 1\n1 0\n", DuplicateEdge, 3),
        ("3 1\n0 5\n", ParseError, 2),
        ("3 2\n0 1\n", ParseError, 1),
        ("three\n", ParseError, 1),
        ("", ParseError, 1),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, exc, line):
    with pytest.raises(exc) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_graph6_matches_networkx_bytes():
    for g in (cycle_graph(5), path_graph(7), complete_bipartite(3, 4), empty_graph(1), complete_graph(6)):
        ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert emit_graph6(g) == ref
        assert parse_graph6(ref) == g


@given(graphs(max_n=12))
def test_graph6_roundtrip(g):
    assert parse_graph6(emit_graph6(g)) == g
    assert parse_graph(emit_edge_list(g)) == g


@pytest.mark.parametrize("bad", ["", "D?", "Dhc@", "Dhd", "D\x7fhc"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_graph6(bad)


def test_c5_is_self_complementary():
    c5 = cycle_graph(5)
    assert are_isomorphic(c5, complement(c5))
    assert complement(complete_graph(4)) == empty_graph(4)


@given(graphs())
def test_complement_is_an_involution(g):
    assert complement(complement(g)) == g
    assert g.m + complement(g).m == g.n * (g.n - 1) // 2


@given(graphs(max_n=5), graphs(max_n=5))
def test_union_and_join_counts(g, h):
    u = disjoint_union(g, h)
    assert u.n == g.n + h.n and u.m == g.m + h.m
    assert len(components(u)) == len(components(g)) + len(components(h))
    j = join(g, h)
    assert j.m == g.m + h.m + g.n * h.n
    assert join(g, h) == complement(disjoint_union(complement(g), complement(h)))


@given(graphs(max_n=4), graphs(max_n=4), graphs(max_n=4))
def test_union_and_join_associative(a, b, c):
    assert are_isomorphic(disjoint_union(disjoint_union(a, b), c), disjoint_union(a, disjoint_union(b, c)))
    assert are_isomorphic(join(join(a, b), c), join(a, join(b, c)))


def test_induced_subgraph_relabels_in_order():
    g = cycle_graph(6)
    sub, verts = induced_subgraph(g, [5, 0, 1])
    assert verts == (0, 1, 5)
    assert sub.edges() == [(0, 1), (0, 2)]
    with pytest.raises(EmptySet):
        induced_subgraph(g, [])


def test_substitute_examples():
    p3 = path_graph(3)
    assert are_isomorphic(substitute(p3, [1], complete_graph(2)), DIAMOND)
    assert substitute(p3, [1], Graph(1, (0,))) == Graph.from_edges(3, [(0, 2), (1, 2)])
    with pytest.raises(EmptySet):
        substitute(p3, [], complete_graph(2))


@given(graphs(min_n=1, max_n=6), st.data())
def test_substituting_a_single_vertex_by_k1_is_isomorphic(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    assert are_isomorphic(substitute(g, [v], Graph(1, (0,))), g)


@given(graphs(min_n=1, max_n=6), st.data())
def test_blowup_size_and_connectivity(g, data):
    sizes = data.draw(st.lists(st.integers(1, 3), min_size=g.n, max_size=g.n))
    b = blowup(g, sizes)
    assert b.n == sum(sizes)
    assert is_connected(b) == is_connected(g)


def test_blowup_rejects_zero():
    with pytest.raises(ZeroMultiplicity):
        blowup(path_graph(2), [1, 0])


@given(graphs(max_n=6))
def test_sibling_adds_pendants(g):
    s = sibling(g)
    assert s.n == 2 * g.n and s.m == g.m + g.n
    if all(g.degree(v) > 0 for v in range(g.n)):
        assert sum(1 for v in range(s.n) if s.degree(v) == 1) == g.n


@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_agrees_with_networkx(g, h):
    assert are_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


@given(graphs(max_n=8), st.randoms())
def test_isomorphic_to_relabelled_copy(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert are_isomorphic(g, h)


def test_p4_is_not_a_star():
    assert not are_isomorphic(path_graph(4), complete_bipartite(1, 3))
