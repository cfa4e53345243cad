import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c4books.finite_field import field_of_order, make_field
from c4books.graph_core import contains_c4, degree_profile, diameter
from c4books.projective_plane import (
    build_er_graph,
    canonicalize,
    enumerate_points,
    is_orthogonal,
    point,
)

QS = [2, 3, 4, 5, 7, 8, 9]


def scan_canonical(f, triple):
    """Oracle: try every nonzero scalar and keep the one with leading coordinate 1."""
    for lam in f.elements()[1:]:
        scaled = tuple(f.mul(lam, c) for c in triple)
        lead = next(c for c in scaled if not c.is_zero())
        if lead == f.one:
            return tuple(c.coeffs for c in scaled)
    raise AssertionError


def test_canonicalize_examples():
    f = make_field(5)
    assert point(f, 2, 4, 0).key == point(f, 1, 2, 0).key
    assert point(f, 1, 1, 1) == point(f, 2, 2, 2)
    assert point(f, 0, 0, 1).key == ((0,), (0,), (1,))
    with pytest.raises(ValueError):
        point(f, 0, 0, 0)


@pytest.mark.parametrize("q", [4, 5, 9])
def test_canonicalize_matches_scalar_scan(q):
    f = field_of_order(q)
    els = f.elements()
    for triple in itertools.product(els, repeat=3):
        if all(c.is_zero() for c in triple):
            continue
        assert canonicalize(triple).key == scan_canonical(f, triple)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([3, 4, 7, 8, 9, 11]), st.data())
def test_canonicalize_idempotent_and_scale_invariant(q, data):
    f = field_of_order(q)
    idx = data.draw(st.tuples(*[st.integers(0, q - 1)] * 3).filter(any))
    lam = f.from_index(data.draw(st.integers(1, q - 1)))
    triple = tuple(f.from_index(i) for i in idx)
    pt = canonicalize(triple)
    assert canonicalize(pt.coords) == pt
    assert canonicalize(tuple(f.mul(lam, c) for c in triple)) == pt
    lead = next(c for c in pt.coords if not c.is_zero())
    assert lead == f.one


@pytest.mark.parametrize("q,count", [(2, 7), (4, 21), (5, 31), (9, 91)])
def test_point_counts_and_order(q, count):
    pts = enumerate_points(field_of_order(q))
    assert len(pts) == count
    assert len({p.key for p in pts}) == count
    assert [p.key for p in pts] == sorted(p.key for p in pts)


def test_orthogonality_examples():
    f = make_field(5)
    assert is_orthogonal(point(f, 1, 0, 0), point(f, 0, 1, 0))
    assert not is_orthogonal(point(f, 1, 0, 0), point(f, 1, 1, 0))
    f3 = make_field(3)
    assert is_orthogonal(point(f3, 1, 1, 1), point(f3, 1, 1, 1))
    with pytest.raises(ValueError):
        is_orthogonal(point(f, 1, 0, 0), point(f3, 1, 0, 0))


def test_orthogonality_is_class_invariant():
    f = make_field(7)
    pts = enumerate_points(f)[:20]
    for p1, p2 in itertools.product(pts, repeat=2):
        for lam in (2, 3, 6):
            s1 = canonicalize(tuple(f.mul(f.element(lam), c) for c in p1.coords))
            assert is_orthogonal(s1, p2) == is_orthogonal(p1, p2)


@pytest.mark.parametrize("q", QS)
def test_er_graph_matches_pointwise_orthogonality(q):
    er = build_er_graph(field_of_order(q))
    adj = er.graph.adjacency
    for i, j in itertools.combinations(range(len(er.points)), 2):
        assert adj[i, j] == is_orthogonal(er.points[i], er.points[j])
    assert not adj.diagonal().any()
    assert er.absolute == frozenset(i for i, p in enumerate(er.points) if p.is_absolute())


@pytest.mark.parametrize("q", QS)
def test_er_graph_structure(q):
    er = build_er_graph(field_of_order(q))
    g = er.graph
    degs = g.degrees
    assert g.n == q * q + q + 1
    assert set(degs.tolist()) == {q, q + 1}
    low = np.flatnonzero(degs == q)
    assert len(low) == q + 1
    assert set(low.tolist()) == set(er.absolute)
    assert not g.adjacency[np.ix_(low, low)].any()
    assert not contains_c4(g)
    assert diameter(g) == 2
    common = g.adjacency.astype(int) @ g.adjacency.astype(int)
    np.fill_diagonal(common, 0)
    assert common.max() <= 1


def test_er_examples():
    er2 = build_er_graph(make_field(2))
    assert degree_profile(er2.graph) == {2: 3, 3: 4}
    er4 = build_er_graph(field_of_order(4))
    assert degree_profile(er4.graph) == {4: 5, 5: 16}


def test_vertex_lookup():
    er = build_er_graph(make_field(5))
    v = er.vertex(0, 0, 1)
    assert er.points[v].key == ((0,), (0,), (1,))
    assert er.vertex(0, 0, 3) == v
