import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c4books.finite_field import field_of_order
from c4books.graph_core import (
    DENSE_LIMIT,
    INFINITE,
    Graph,
    _book_blocked,
    c4_and_book,
    contains_c4,
    decode_graph6,
    degree_profile,
    diameter,
    encode_graph6,
    max_book_in_complement,
    proposition_degree_test,
)
from c4books.projective_plane import build_er_graph


# -- naive oracles -----------------------------------------------------------------

def naive_c4(g):
    adj = g.adjacency
    for a, b, c, d in itertools.permutations(range(g.n), 4):
        if adj[a, b] and adj[b, c] and adj[c, d] and adj[d, a]:
            return True
    return False


def naive_book(g):
    """Largest m with B_m in the complement, by explicit spine and page search."""
    adj = g.adjacency
    best = None
    for u, v in itertools.combinations(range(g.n), 2):
        if adj[u, v]:
            continue
        pages = [w for w in range(g.n) if w not in (u, v) and not adj[u, w] and not adj[v, w]]
        best = len(pages) if best is None else max(best, len(pages))
    return best


def graphs_from_bits(n, bits):
    pairs = list(itertools.combinations(range(n), 2))
    return Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


graph_strategy = st.integers(0, 9).flatmap(
    lambda n: st.integers(0, (1 << (n * (n - 1) // 2)) - 1).map(lambda b: graphs_from_bits(n, b))
)


# -- representation ------------------------------------------------------------------

def test_validation():
    with pytest.raises(ValueError):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[1]])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    g = Graph.cycle(5)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = False


def test_basic_accessors():
    g = Graph.cycle(5)
    assert g.n == 5 and g.num_edges == 5
    assert g.neighbors(0).tolist() == [1, 4]
    assert g.has_edge(0, 4) and not g.has_edge(0, 2)
    assert sorted(g.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert Graph.from_bitrows(g.bitrows()) == g
    assert g.complement().complement() == g
    assert hash(g) == hash(Graph.cycle(5))


def test_mutating_helpers():
    g = Graph.path(4)
    h = g.with_changes(add=[(0, 3)], remove=[(1, 2)])
    assert h.has_edge(0, 3) and not h.has_edge(1, 2)
    assert g.add_vertex([0, 2]).neighbors(4).tolist() == [0, 2]
    assert g.delete_vertices([0]) == Graph.path(3)
    assert g.induced([1, 2, 3]) == Graph.path(3)


# -- C4 ----------------------------------------------------------------------------

def test_c4_examples():
    assert contains_c4(Graph.cycle(4))
    assert not contains_c4(Graph.path(4))
    assert not contains_c4(build_er_graph(field_of_order(5)).graph)
    assert not contains_c4(Graph.petersen())


@pytest.mark.parametrize("n", range(0, 6))
def test_exhaustive_small_graphs(n):
    pairs = n * (n - 1) // 2
    for bits in range(1 << pairs):
        g = graphs_from_bits(n, bits)
        has, book = c4_and_book(g)
        assert has == naive_c4(g) == contains_c4(g)
        assert book == naive_book(g) == max_book_in_complement(g)
        assert decode_graph6(encode_graph6(g)) == g


@settings(max_examples=400, deadline=None)
@given(graph_strategy)
def test_random_graphs_against_oracles(g):
    assert contains_c4(g) == naive_c4(g)
    assert max_book_in_complement(g) == naive_book(g)


@settings(max_examples=300, deadline=None)
@given(graph_strategy)
def test_degree_sum_certificate_implies_c4(g):
    if proposition_degree_test(g):
        assert naive_c4(g)


def test_proposition_examples():
    assert proposition_degree_test(Graph.complete(4))
    assert not proposition_degree_test(Graph.empty(6))
    er4 = build_er_graph(field_of_order(4)).graph
    assert not proposition_degree_test(er4)


# -- book number ---------------------------------------------------------------------

def test_book_examples():
    assert max_book_in_complement(Graph.empty(6)) == 4
    assert max_book_in_complement(Graph.complete(5)) is None
    assert max_book_in_complement(build_er_graph(field_of_order(4)).graph) == 12
    assert max_book_in_complement(Graph.empty(2)) == 0


def _large_er(q=53):
    g = build_er_graph(field_of_order(q)).graph
    assert g.n > DENSE_LIMIT
    return g


def test_large_graph_path_agrees_with_blocked_products():
    g = _large_er()
    rng = np.random.default_rng(1)
    keep = np.sort(rng.choice(g.n, size=g.n - 40, replace=False))
    h = g.induced(keep)
    assert h.n > DENSE_LIMIT
    has, book = c4_and_book(h)
    assert not has
    assert book == _book_blocked(h)


def test_large_graph_c4_detection():
    g = _large_er()
    adj = g.adjacency
    # join two vertices at distance two; the oracle below decides whether a C4 appears
    u = 0
    nu = set(g.neighbors(u).tolist())
    v = next(x for x in range(1, g.n) if not adj[u, x] and x not in nu)
    h = g.with_changes(add=[(u, v)])
    a = h.adjacency.astype(np.float32)
    expected = False
    for s in range(0, h.n, 1024):
        c = a[s:s + 1024] @ a
        c[np.arange(c.shape[0]), np.arange(s, s + c.shape[0])] = 0
        expected |= bool((c >= 2).any())
    assert contains_c4(h) == expected
    has, book = c4_and_book(h)
    assert has == expected
    assert book == _book_blocked(h)


# -- statistics ----------------------------------------------------------------------

def test_degree_profile_and_diameter():
    er4 = build_er_graph(field_of_order(4)).graph
    assert degree_profile(er4) == {4: 5, 5: 16}
    assert diameter(er4) == 2
    assert degree_profile(Graph.complete(3)) == {2: 3}
    assert diameter(Graph.complete(3)) == 1
    assert diameter(Graph.empty(2)) == INFINITE


@settings(max_examples=100, deadline=None)
@given(graph_strategy)
def test_diameter_matches_networkx(g):
    G = nx.from_numpy_array(g.adjacency.astype(int))
    if g.n <= 1:
        assert diameter(g) == 0
    elif nx.is_connected(G):
        assert diameter(g) == nx.diameter(G)
    else:
        assert diameter(g) == INFINITE


# -- graph6 --------------------------------------------------------------------------

def test_graph6_examples():
    assert encode_graph6(Graph.empty(1)) == b"@"
    assert encode_graph6(Graph.complete(2)) == b"A_"
    assert decode_graph6(b">>graph6<<A_\n") == Graph.complete(2)


@settings(max_examples=200, deadline=None)
@given(graph_strategy)
def test_graph6_matches_networkx(g):
    G = nx.from_numpy_array(g.adjacency.astype(int))
    ours = encode_graph6(g)
    theirs = nx.to_graph6_bytes(G, header=False).strip()
    assert ours == theirs
    back = nx.from_graph6_bytes(ours)
    assert nx.to_numpy_array(back, nodelist=range(g.n)).astype(bool).tolist() == g.adjacency.tolist()


@pytest.mark.parametrize("n", [62, 63, 100, 258, 500])
def test_graph6_roundtrip_larger(n):
    rng = np.random.default_rng(n)
    upper = np.triu(rng.random((n, n)) < 0.3, 1)
    g = Graph(upper | upper.T)
    data = encode_graph6(g)
    assert decode_graph6(data) == g
    assert data == nx.to_graph6_bytes(nx.from_numpy_array(g.adjacency.astype(int)), header=False).strip()


def test_graph6_size_field_forms():
    from c4books.graph_core import _encode_size

    assert _encode_size(62) == bytes([125])
    assert _encode_size(63) == b"~" + bytes([63, 63 + 0, 63 + 63])
    assert _encode_size(258048)[:2] == b"~~" and len(_encode_size(258048)) == 8
    with pytest.raises(ValueError):
        _encode_size(-1)


@pytest.mark.parametrize("bad", [b"", b"A", b"A__", b"\x20", b"~??", b"B~"])
def test_graph6_malformed(bad):
    with pytest.raises(ValueError):
        decode_graph6(bad)
