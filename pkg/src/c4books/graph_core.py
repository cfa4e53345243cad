"""Simple undirected graphs and the predicates the rest of the package needs.

A :class:`Graph` wraps a read-only symmetric boolean adjacency matrix.
Small graphs (up to ``DENSE_LIMIT`` vertices) use a dense common-neighbour
matrix product; larger ones (the ER_p survivors reach ~10^4 vertices)
use a wedge scan whose cost is the sum of squared degrees rather than n^3.
"""

from __future__ import annotations

from collections import Counter
from functools import cached_property
from math import comb

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

DENSE_LIMIT = 2500
INFINITE = "infinite"


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("_adj", "__dict__")

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj.flags.writeable = False
        self._adj = adj

    @classmethod
    def _trusted(cls, adj: np.ndarray) -> Graph:
        # skips validation; adj must already be symmetric bool with zero diagonal
        g = cls.__new__(cls)
        adj.flags.writeable = False
        g._adj = adj
        return g

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u, v] = adj[v, u] = True
        return cls._trusted(adj)

    @classmethod
    def from_bitrows(cls, rows) -> Graph:
        n = len(rows)
        adj = np.zeros((n, n), dtype=bool)
        for i, r in enumerate(rows):
            for j in range(n):
                if r >> j & 1:
                    adj[i, j] = True
        return cls(adj)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls._trusted(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls._trusted(~np.eye(n, dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    def __len__(self):
        return self.n

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self._adj.sum(axis=1, dtype=np.int64)
        d.flags.writeable = False
        return d

    @cached_property
    def _nbrs(self) -> list[np.ndarray]:
        return [np.flatnonzero(row) for row in self._adj]

    def neighbors(self, v: int) -> np.ndarray:
        return self._nbrs[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def edges(self):
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    @property
    def num_edges(self) -> int:
        return int(self.degrees.sum()) // 2

    def bitrows(self) -> list[int]:
        """Adjacency as one Python int bitset per vertex (bit j of row i = edge ij)."""
        weights = [1 << j for j in range(self.n)]
        return [sum(weights[j] for j in nb.tolist()) for nb in self._nbrs]

    def complement(self) -> Graph:
        c = ~self._adj
        np.fill_diagonal(c, False)
        return Graph._trusted(c)

    def delete_vertices(self, vertices) -> Graph:
        keep = np.ones(self.n, dtype=bool)
        keep[list(vertices)] = False
        return self.induced(np.flatnonzero(keep))

    def induced(self, keep) -> Graph:
        keep = np.asarray(keep, dtype=np.int64)
        return Graph._trusted(self._adj[np.ix_(keep, keep)].copy())

    def with_changes(self, add=(), remove=()) -> Graph:
        adj = self._adj.copy()
        for u, v in remove:
            adj[u, v] = adj[v, u] = False
        for u, v in add:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u, v] = adj[v, u] = True
        return Graph._trusted(adj)

    def add_vertex(self, neighbors) -> Graph:
        n = self.n
        adj = np.zeros((n + 1, n + 1), dtype=bool)
        adj[:n, :n] = self._adj
        nb = list(neighbors)
        adj[n, nb] = True
        adj[nb, n] = True
        return Graph._trusted(adj)

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash(np.packbits(self._adj).tobytes())

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


# -- common-neighbour machinery ---------------------------------------------

def common_neighbor_counts(g: Graph) -> np.ndarray:
    """Dense n x n matrix of |N(u) & N(v)|; use only for small graphs."""
    a = g.adjacency.astype(np.float32)
    return (a @ a).astype(np.int64)


def _wedge_chunks(g: Graph, max_pairs: int = 4_000_000):
    """Yield (x, y) arrays of endpoint pairs x < y of length-2 paths x-w-y.

    A pair appears once per common neighbour, so duplicates signal a C4.
    """
    xs, ys, size = [], [], 0
    cache = {}
    for nb in g._nbrs:
        d = len(nb)
        if d < 2:
            continue
        if d not in cache:
            cache[d] = np.triu_indices(d, 1)
        i, j = cache[d]
        xs.append(nb[i])
        ys.append(nb[j])
        size += len(i)
        if size >= max_pairs:
            yield np.concatenate(xs), np.concatenate(ys)
            xs, ys, size = [], [], 0
    if xs:
        yield np.concatenate(xs), np.concatenate(ys)


def _wedge_scan(g: Graph):
    """Return (has_c4, s1) where s1 is the minimum of d(x)+d(y) over
    non-adjacent pairs with a common neighbour (None if there are none)."""
    n = g.n
    deg = g.degrees
    seen = np.zeros(n * n, dtype=bool)
    has_c4 = False
    s1 = None
    for x, y in _wedge_chunks(g):
        codes = x * n + y
        if not has_c4:
            if seen[codes].any() or np.unique(codes).size < codes.size:
                has_c4 = True
            else:
                seen[codes] = True
        nonadj = ~g.adjacency[x, y]
        if nonadj.any():
            s = int((deg[x[nonadj]] + deg[y[nonadj]]).min())
            s1 = s if s1 is None else min(s1, s)
    return has_c4, s1


def _min_nonadjacent_degree_sum(g: Graph):
    """Minimum d(u)+d(v) over distinct non-adjacent pairs, or None."""
    n = g.n
    deg = g.degrees
    order = np.argsort(deg, kind="stable")
    best = None
    for u in range(n):
        # only the first d(u)+2 entries of the sorted order can be skipped
        cand = order[: int(deg[u]) + 2]
        ok = ~g.adjacency[u, cand] & (cand != u)
        if ok.any():
            v = cand[np.argmax(ok)]
            s = int(deg[u] + deg[v])
            best = s if best is None else min(best, s)
    return best


def contains_c4(g: Graph) -> bool:
    """True iff some pair of distinct vertices has at least two common neighbours."""
    if proposition_degree_test(g):
        return True
    if g.n <= DENSE_LIMIT:
        c = common_neighbor_counts(g)
        np.fill_diagonal(c, 0)
        return bool((c >= 2).any())
    return _wedge_scan(g)[0]


def max_book_in_complement(g: Graph):
    """Largest number of common non-neighbours over non-adjacent pairs.

    Returns None when ``g`` is complete (no complement edge exists).  The
    complement of ``g`` contains B_m exactly when the result is >= m.
    """
    return c4_and_book(g)[1]


def c4_and_book(g: Graph):
    """``(contains_c4(g), max_book_in_complement(g))`` from a single pass."""
    n = g.n
    complete = n < 2 or g.num_edges == comb(n, 2)
    if n <= DENSE_LIMIT:
        c = common_neighbor_counts(g)
        np.fill_diagonal(c, 0)
        has_c4 = bool((c >= 2).any())
        if complete:
            return has_c4, None
        deg = g.degrees
        pages = n - 2 - deg[:, None] - deg[None, :] + c
        mask = ~g.adjacency.copy()
        np.fill_diagonal(mask, False)
        return has_c4, int(pages[mask].max())
    has_c4, s1 = _wedge_scan(g)
    if complete:
        return has_c4, None
    if has_c4:
        # common-neighbour counts may exceed one; fall back to blocked products
        return has_c4, _book_blocked(g)
    # with at most one common neighbour per pair the optimum is governed by
    # the smallest degree sums, with and without a common neighbour
    best = n - 2 - _min_nonadjacent_degree_sum(g)
    if s1 is not None:
        best = max(best, n - 1 - s1)
    return has_c4, best


def _book_blocked(g: Graph, block: int = 1024) -> int:
    a = g.adjacency.astype(np.float32)
    deg = g.degrees
    n = g.n
    best = None
    for start in range(0, n, block):
        stop = min(n, start + block)
        c = (a[start:stop] @ a).astype(np.int64)
        pages = n - 2 - deg[start:stop, None] - deg[None, :] + c
        mask = ~g.adjacency[start:stop].copy()
        mask[np.arange(stop - start), np.arange(start, stop)] = False
        if mask.any():
            m = int(pages[mask].max())
            best = m if best is None else max(best, m)
    return best


def proposition_degree_test(g: Graph) -> bool:
    """Degree-sum certificate: sum C(d(v),2) > C(n,2) forces a C4.

    Only a sufficient condition; False says nothing about C4-freeness.
    """
    d = g.degrees
    return int((d * (d - 1) // 2).sum()) > comb(g.n, 2)


def degree_profile(g: Graph) -> dict[int, int]:
    return dict(sorted(Counter(g.degrees.tolist()).items()))


def diameter(g: Graph):
    """Maximum eccentricity, or ``"infinite"`` for disconnected graphs."""
    if g.n <= 1:
        return 0
    dist = shortest_path(csr_matrix(g.adjacency), unweighted=True, directed=False)
    if np.isinf(dist).any():
        return INFINITE
    return int(dist.max())


def min_degree(g: Graph) -> int:
    return int(g.degrees.min()) if g.n else 0


# -- graph6 -------------------------------------------------------------------

GRAPH6_HEADER = b">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n < 0 or n > 68719476735:
        raise ValueError(f"graph6 cannot encode n={n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(g: Graph) -> bytes:
    """graph6 bytes (no header, no trailing newline)."""
    n = g.n
    iu, ju = np.triu_indices(n, 1)
    # column-major upper triangle: (0,1),(0,2),(1,2),(0,3),...
    order = np.lexsort((iu, ju))
    bits = g.adjacency[iu[order], ju[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    values = bits @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return _encode_size(n) + (values + 63).astype(np.uint8).tobytes()


def decode_graph6(data) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = bytes(data).strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data or any(b < 63 or b > 126 for b in data):
        raise ValueError("malformed graph6: bytes must lie in 63..126")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ValueError("malformed graph6: truncated size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        body = data[8:]
    else:
        if len(data) < 4:
            raise ValueError("malformed graph6: truncated size field")
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        body = data[4:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ValueError(f"malformed graph6: expected {(nbits + 5) // 6} data bytes, got {len(body)}")
    vals = np.frombuffer(body, dtype=np.uint8) - 63
    bits = ((vals[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)
    if bits[nbits:].any():
        raise ValueError("malformed graph6: nonzero padding bits")
    iu, ju = np.triu_indices(n, 1)
    order = np.lexsort((iu, ju))
    adj = np.zeros((n, n), dtype=bool)
    on = bits[:nbits].astype(bool)
    adj[iu[order][on], ju[order][on]] = True
    adj |= adj.T
    return Graph._trusted(adj)
