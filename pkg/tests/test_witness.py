import itertools

import pytest

from c4books.constructions import build_H, build_tmax_witness
from c4books.graph_core import Graph
from c4books.witness import (
    OrderMismatchError,
    check_extremal_candidate,
    find_book,
    find_c4,
    verify_witness,
)


def test_construction_report():
    rep = verify_witness(build_H(4, 3).graph, 10)
    assert rep.valid
    assert rep.statement == "r(C4,B10) >= 19"
    assert rep.order == 18 and rep.c4_free and rep.min_degree == 4 and rep.book_max == 9


def test_four_cycle_fails_with_cycle_evidence():
    g = Graph.cycle(4)
    rep = verify_witness(g, 1)
    assert not rep.valid and rep.failure == "contains C4"
    a, b, c, d = rep.evidence
    assert g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a)
    assert len({a, b, c, d}) == 4


def test_empty_graph_fails_with_book_evidence():
    g = Graph.empty(5)
    rep = verify_witness(g, 3)
    assert not rep.valid and rep.failure == "complement contains B3"
    u, v, *pages = rep.evidence
    assert len(pages) == 3
    h = g.complement()
    assert h.has_edge(u, v)
    assert all(h.has_edge(u, w) and h.has_edge(v, w) for w in pages)


def test_complete_graph_has_no_book():
    rep = verify_witness(Graph.complete(3), 1)
    assert rep.book_max is None
    assert rep.valid


def test_invalid_n():
    with pytest.raises(ValueError):
        verify_witness(Graph.cycle(5), 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_verdict_equivalence_on_all_graphs_of_order_five(n):
    pairs = list(itertools.combinations(range(5), 2))
    for bits in range(0, 1 << len(pairs), 7):
        g = Graph.from_edges(5, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])
        rep = verify_witness(g, n)
        assert rep.valid == (rep.c4_free and (rep.book_max is None or rep.book_max < n))
        if not rep.valid:
            assert rep.evidence is not None


def test_find_helpers_return_none_when_absent():
    assert find_c4(Graph.petersen()) is None
    assert find_book(Graph.complete(4), 1) is None


def test_text_and_dict_have_fixed_fields():
    rep = verify_witness(Graph.cycle(4), 1)
    lines = rep.to_text().splitlines()
    assert [ln.split(":")[0] for ln in lines] == [
        "order", "claimed_n", "c4_free", "min_degree", "book_max", "verdict", "failure", "evidence",
    ]
    d = rep.to_dict()
    assert d["valid"] is False and d["statement"] is None


def test_extremal_candidate_membership():
    # q^2+q+3 vertices: the polarity construction stops two short, so add isolated vertices
    q = 4
    base = build_tmax_witness(q).graph  # order q^2+q-2
    padded = Graph.from_bitrows(base.bitrows() + [0] * 5)
    assert padded.n == q * q + q + 3
    assert check_extremal_candidate(padded, q) is False
    with pytest.raises(OrderMismatchError):
        check_extremal_candidate(base, q)
    with pytest.raises(ValueError):
        check_extremal_candidate(base, 6)
    with pytest.raises(ValueError):
        check_extremal_candidate(base, 2)
