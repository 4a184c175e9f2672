import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus, corpus_upto
from oracles import nx_graph6
from factorlab.errors import Graph6Error, PreconditionError, UnsupportedSizeError
from factorlab.graph import (
    Graph,
    attach_pendant,
    component_stats,
    complete_graph,
    count_components,
    cycle_graph,
    delete_vertices,
    edge_cut_count,
    encode_graph6,
    format_edge_list,
    parse_edge_list,
    parse_graph6,
    path_graph,
    petersen_graph,
    star_graph,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


def test_parse_k2_and_empty():
    assert parse_graph6("A_") == complete_graph(2)
    assert parse_graph6("A?") == Graph.from_edges(2, [])
    assert parse_graph6("A_").edges == ((0, 1),)


def test_encode_small():
    assert encode_graph6(complete_graph(2)) == "A_"
    assert encode_graph6(Graph.from_edges(2, [])) == "A?"
    assert encode_graph6(Graph.from_edges(0, [])) == "?"
    assert encode_graph6(Graph.from_edges(1, [])) == "@"


def test_encode_c4_golden():
    # Frozen from networkx's independent encoder: bits 101101 -> 45 + 63 = 'l'.
    assert nx_graph6(cycle_graph(4)) == "Cl"
    assert encode_graph6(cycle_graph(4)) == "Cl"


def test_encode_petersen_matches_networkx():
    assert encode_graph6(petersen_graph()) == nx_graph6(petersen_graph()) == "IheA@GUAo"


@pytest.mark.parametrize("n", range(1, 6))
def test_roundtrip_fixed_point_over_corpus(n):
    for G in corpus(n):
        rec = encode_graph6(G)
        assert encode_graph6(parse_graph6(rec)) == rec
        assert parse_graph6(rec) == G


def test_encoder_agrees_with_networkx_on_corpus():
    for G in corpus_upto(5):
        assert encode_graph6(G) == nx_graph6(G)


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=20))
def test_roundtrip_random(G):
    assert parse_graph6(encode_graph6(G)) == G
    assert encode_graph6(G) == nx_graph6(G)


def test_encode_rejects_large():
    with pytest.raises(UnsupportedSizeError):
        encode_graph6(Graph.from_edges(63, []))
    assert len(encode_graph6(Graph.from_edges(62, []))) == 1 + (62 * 61 // 2 + 5) // 6


@pytest.mark.parametrize(
    "record, offset",
    [
        ("", None),
        ("A", 1),  # missing edge byte
        ("A__", 2),  # one byte too many
        ("A`", 1),  # padding bit set (0b100001)
        ("A ", 1),  # space is below 63
        ("A\x7f", 1),  # DEL is above 126
        ("~", 0),  # multi-byte size marker
        ("Cl?", 2),
        ("C", 1),
        ("Dhc\x00", 3),
        ("Dh", 2),  # n=5 needs two edge bytes
    ],
)
def test_malformed_records(record, offset):
    with pytest.raises(Graph6Error) as exc:
        parse_graph6(record)
    assert exc.value.offset == offset


def test_padding_error_names_last_byte():
    # n=3: three data bits, three padding bits.  0b111001 has a padding bit set.
    with pytest.raises(Graph6Error) as exc:
        parse_graph6("B" + chr(0b111001 + 63))
    assert exc.value.offset == 1
    assert "padding" in str(exc.value)


def test_delete_vertices_examples():
    C4 = cycle_graph(4)
    assert delete_vertices(C4, {0}) == path_graph(3)
    assert delete_vertices(C4, {0, 2}) == Graph.from_edges(2, [])
    assert delete_vertices(star_graph(3), {0}) == Graph.from_edges(3, [])
    assert delete_vertices(C4, set(range(4))) == Graph.from_edges(0, [])
    assert delete_vertices(C4, set()) == C4


def test_delete_vertices_degrees():
    G = petersen_graph()
    S = {1, 4, 7}
    H = delete_vertices(G, S)
    keep = [v for v in range(G.n) if v not in S]
    for i, v in enumerate(keep):
        assert H.degree(i) == G.degree(v) - sum(1 for s in S if G.has_edge(v, s))


def test_component_stats_examples():
    s = component_stats(delete_vertices(cycle_graph(4), {0, 2}))
    assert (s.omega, s.odd, s.iso) == (2, 2, 2)
    assert component_stats(petersen_graph()).omega == 1
    s = component_stats(delete_vertices(path_graph(3), {1}))
    assert (s.omega, s.odd, s.iso) == (2, 2, 2)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=9), st.data())
def test_component_stats_invariants(G, data):
    S = data.draw(st.sets(st.integers(0, max(G.n - 1, 0)), max_size=G.n)) if G.n else set()
    s = component_stats(delete_vertices(G, S))
    assert s.iso <= s.odd <= s.omega
    members = [v for c in s.components for v in c]
    assert sorted(members) == list(range(G.n - len(S)))
    assert s.odd == sum(len(c) % 2 for c in s.components)
    assert s.iso == sum(len(c) == 1 for c in s.components)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_odd_components_parity_for_even_order(n):
    # odd(G' - X) ≡ |X| (mod 2) whenever |V(G')| is even; exhaustive over all graphs.
    pairs = [(i, j) for j in range(n) for i in range(j)]
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        G = Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
        for X in range(1 << n):
            _, odd, _ = count_components(G.nbr, full & ~X)
            assert (odd - X.bit_count()) % 2 == 0


def test_edge_cut_count_examples():
    assert edge_cut_count(complete_graph(2), {0}, {1}) == 1
    assert edge_cut_count(cycle_graph(4), {0, 1}, {0, 1}) == 2
    assert edge_cut_count(cycle_graph(4), {0, 1}, {2, 3}) == 2


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8), st.data())
def test_edge_cut_count_definition(G, data):
    verts = st.sets(st.integers(0, max(G.n - 1, 0)), max_size=G.n) if G.n else st.just(set())
    X, Y = data.draw(verts), data.draw(verts)
    expect = sum((u in X and v in Y) + (v in X and u in Y) for u, v in G.edges)
    assert edge_cut_count(G, X, Y) == expect
    assert edge_cut_count(G, X, X) == 2 * sum(1 for u, v in G.edges if u in X and v in X)


def test_attach_pendant_examples():
    P, x = attach_pendant(complete_graph(2), 0)
    assert x == 2 and P == Graph.from_edges(3, [(0, 1), (0, 2)])
    T, x = attach_pendant(cycle_graph(3), 1)
    assert T.degree(x) == 1 and T.degree(1) == 3 and T.n == 4
    with pytest.raises(PreconditionError):
        attach_pendant(complete_graph(2), 2)


def test_pendant_adds_one_component_after_removing_anchor():
    for G in corpus_upto(5, 2):
        for x in range(G.n):
            Gx, _ = attach_pendant(G, x)
            before = component_stats(delete_vertices(G, {x})).omega
            assert component_stats(delete_vertices(Gx, {x})).omega == before + 1


def test_graph_validation():
    with pytest.raises(PreconditionError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(PreconditionError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(PreconditionError):
        Graph(2, (0b10, 0b00))


def test_edge_list_roundtrip():
    G = petersen_graph()
    assert parse_edge_list(format_edge_list(G)) == G
    assert parse_edge_list("3 2\n0 1\n# comment\n1 2\n") == path_graph(3)
    for bad in ["", "3 2\n0 1\n", "2 1\n0 0\n", "2 2\n0 1\n1 0\n", "x y\n"]:
        with pytest.raises(PreconditionError):
            parse_edge_list(bad)


def test_random_relabel_free():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 9)
        edges = [(i, j) for j in range(n) for i in range(j) if rng.random() < 0.4]
        G = Graph.from_edges(n, edges)
        assert set(G.edges) == {(min(e), max(e)) for e in edges}
        assert G.m == len(edges)
