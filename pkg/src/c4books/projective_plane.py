"""Points of PG(2, q) and the orthogonal polarity graph ER_q."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finite_field import FieldElement, FieldSpec
from .graph_core import Graph


@dataclass(frozen=True)
class ProjectivePoint:
    """Canonical representative: the leftmost nonzero coordinate is 1."""

    coords: tuple[FieldElement, FieldElement, FieldElement]

    @property
    def field(self) -> FieldSpec:
        return self.coords[0].field

    @property
    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.coeffs for c in self.coords)

    def is_absolute(self) -> bool:
        return is_orthogonal(self, self)

    def __str__(self):
        return "<" + ",".join(str(c) for c in self.coords) + ">"

    def __lt__(self, other):
        return self.key < other.key


def canonicalize(triple) -> ProjectivePoint:
    a = tuple(triple)
    if len(a) != 3:
        raise ValueError("projective points have three coordinates")
    field = a[0].field
    if any(c.field != field for c in a):
        raise ValueError("coordinates from different fields")
    for c in a:
        if not c.is_zero():
            lam = field.inv(c)
            return ProjectivePoint(tuple(field.mul(lam, x) for x in a))
    raise ValueError("the all-zero triple is not a projective point")


def point(field: FieldSpec, a1, a2, a3) -> ProjectivePoint:
    return canonicalize(tuple(field.element(v) for v in (a1, a2, a3)))


def point_index_array(q: int, one: int) -> np.ndarray:
    """Coordinate-index triples of the canonical points, one row per point."""
    # rows sorted lexicographically by element index; 0 is the smallest index
    rows = [(0, 0, one)]
    rows += [(0, one, c) for c in range(q)]
    rows += [(one, b, c) for b in range(q) for c in range(q)]
    return np.array(sorted(rows), dtype=np.int64)


def enumerate_points(field: FieldSpec) -> list[ProjectivePoint]:
    """All q^2+q+1 canonical points in lexicographic coordinate order."""
    idx = point_index_array(field.q, field.one.index)
    els = field.elements()
    return [ProjectivePoint(tuple(els[i] for i in row)) for row in idx.tolist()]


def is_orthogonal(p1: ProjectivePoint, p2: ProjectivePoint) -> bool:
    f = p1.field
    if p2.field != f:
        raise ValueError("points over different fields")
    s = f.zero
    for a, b in zip(p1.coords, p2.coords):
        s = f.add(s, f.mul(a, b))
    return s.is_zero()


def _orthogonality_matrix(field: FieldSpec, idx: np.ndarray, block: int = 512) -> np.ndarray:
    n = len(idx)
    out = np.empty((n, n), dtype=bool)
    if field.k == 1:
        p = field.p
        xt = idx.T.copy()
        for s in range(0, n, block):
            out[s:s + block] = (idx[s:s + block] @ xt) % p == 0
        return out
    add, mul = field.add_table, field.mul_table
    for s in range(0, n, block):
        b = idx[s:s + block]
        acc = mul[b[:, 0:1], idx[None, :, 0]]
        for c in (1, 2):
            acc = add[acc, mul[b[:, c:c + 1], idx[None, :, c]]]
        out[s:s + block] = acc == 0
    return out


@dataclass(frozen=True, eq=False)
class PolarityGraph:
    field: FieldSpec
    points: list[ProjectivePoint]
    graph: Graph
    absolute: frozenset[int]

    @property
    def q(self) -> int:
        return self.field.q

    def index_of(self, pt: ProjectivePoint) -> int:
        return self._lookup[pt.key]

    @property
    def _lookup(self) -> dict:
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = {pt.key: i for i, pt in enumerate(self.points)}
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    def vertex(self, a1, a2, a3) -> int:
        return self.index_of(point(self.field, a1, a2, a3))


def build_er_graph(field: FieldSpec) -> PolarityGraph:
    """ER_q: points of PG(2,q), adjacent when orthogonal, loops dropped.

    Absolute points are found from self-orthogonality; their degree-q
    characterisation is left to the callers to verify.
    """
    idx = point_index_array(field.q, field.one.index)
    orth = _orthogonality_matrix(field, idx)
    diag = orth.diagonal().copy()
    np.fill_diagonal(orth, False)
    graph = Graph._trusted(orth)
    points = enumerate_points(field)
    return PolarityGraph(field, points, graph, frozenset(np.flatnonzero(diag).tolist()))
