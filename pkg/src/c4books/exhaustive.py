"""Isomorph-free enumeration of C4-free graphs and exact small Ramsey values.

Graphs are handled as tuples of int bitsets.  Canonical labels come from
partition refinement plus individualisation; the canonical form is the
relabelling whose column-major upper-triangle bit string is smallest.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .bounds import star_upper
from .graph_core import Graph, encode_graph6
from .witness import verify_witness

MAX_FULL_ORDER = 10
MAX_PRUNED_ORDER = 13


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration runs past its time or graph budget."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


# -- canonical form -------------------------------------------------------------

def _refine(rows, cells):
    """Split cells by neighbour counts into every cell until stable.

    ``cells`` is an ordered list of tuples; the result depends only on the
    isomorphism type of (graph, ordered partition).
    """
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {}
            for v in c:
                key = tuple(_popcount(rows[v] & m) for m in masks)
                sig.setdefault(key, []).append(v)
            if len(sig) == 1:
                out.append(c)
            else:
                changed = True
                out.extend(tuple(sig[k]) for k in sorted(sig))
        cells = out
        if not changed:
            return cells


def _relabel_key(rows, order) -> int:
    key = 0
    for j in range(1, len(order)):
        rj = rows[order[j]]
        for i in range(j):
            key = (key << 1) | (rj >> order[i] & 1)
    return key


def _twin_classes(rows, cell):
    # vertices with equal neighbourhoods (ignoring each other) are interchangeable
    reps = []
    for v in cell:
        for r in reps:
            bit = (1 << v) | (1 << r)
            if rows[v] & ~bit == rows[r] & ~bit:
                break
        else:
            reps.append(v)
    return reps


def canonical_order(rows) -> tuple[int, tuple[int, ...]]:
    """(key, order): ``order[i]`` is the original vertex placed at position i."""
    n = len(rows)
    if n <= 1:
        return 0, tuple(range(n))
    degs = [_popcount(r) for r in rows]
    by_deg = {}
    for v in range(n):
        by_deg.setdefault(degs[v], []).append(v)
    cells = _refine(rows, [tuple(by_deg[d]) for d in sorted(by_deg)])
    best = [None, None]

    def search(cells):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = tuple(c[0] for c in cells)
            k = _relabel_key(rows, order)
            if best[0] is None or k < best[0]:
                best[0], best[1] = k, order
            return
        c = cells[target]
        for v in _twin_classes(rows, c):
            rest = tuple(x for x in c if x != v)
            split = cells[:target] + [(v,), rest] + cells[target + 1:]
            search(_refine(rows, split))

    search(cells)
    return best[0], best[1]


def canonical_form(rows) -> tuple[tuple[int, int], tuple[int, ...]]:
    """((n, key), relabelled rows); equal keys mean isomorphic graphs."""
    key, order = canonical_order(rows)
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        r = rows[v]
        out.append(sum(1 << pos[u] for u in range(len(rows)) if r >> u & 1))
    return (len(rows), key), tuple(out)


def canonical_key(rows) -> tuple[int, int]:
    return len(rows), canonical_order(rows)[0]


def graph_rows(g: Graph) -> tuple[int, ...]:
    return tuple(g.bitrows())


# -- C4 / book predicates on bitsets (independent of graph_core) ------------------

def rows_contain_c4(rows) -> bool:
    n = len(rows)
    return any(_popcount(rows[u] & rows[v]) >= 2 for u in range(n) for v in range(u + 1, n))


def explicit_book_size(rows) -> int | None:
    """Largest B_m in the complement, by explicit spine-and-page search."""
    n = len(rows)
    full = (1 << n) - 1
    best = None
    for u in range(n):
        for v in range(u + 1, n):
            if rows[u] >> v & 1:
                continue
            pages = full & ~rows[u] & ~rows[v] & ~(1 << u) & ~(1 << v)
            m = _popcount(pages)
            if best is None or m > best:
                best = m
    return best


# -- enumeration ------------------------------------------------------------------

class _Budget:
    def __init__(self, seconds=None, graphs=None):
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.graphs = graphs
        self.count = 0

    def tick(self, k=1):
        self.count += k
        if self.graphs is not None and self.count > self.graphs:
            raise BudgetExceeded(f"graph budget {self.graphs} exceeded")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exceeded")


def _extensions(rows, min_degree_final, remaining_after):
    """Bitsets S such that adding a vertex adjacent to S keeps the graph C4-free
    and every vertex can still reach the final degree bound."""
    n = len(rows)
    conflict = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rows[a] & rows[b]:
                conflict[a] |= 1 << b
                conflict[b] |= 1 << a
    need = 0  # vertices that must gain the new neighbour
    if min_degree_final is not None:
        for v in range(n):
            d = _popcount(rows[v])
            if d + 1 + remaining_after < min_degree_final:
                return
            if d + remaining_after < min_degree_final:
                need |= 1 << v
        if need and any(conflict[v] & need for v in range(n) if need >> v & 1):
            return

    def rec(i, chosen, banned):
        if i == n:
            yield chosen
            return
        bit = 1 << i
        if not need & bit:
            yield from rec(i + 1, chosen, banned)
        if not banned & bit:
            yield from rec(i + 1, chosen | bit, banned | conflict[i])

    new_deg_ok = min_degree_final is None
    for s in rec(0, 0, 0):
        if new_deg_ok or _popcount(s) + remaining_after >= min_degree_final:
            yield s


def _level_reps(order, min_degree, budget):
    """Canonical representatives of all admissible C4-free graphs, level by level."""
    level = {(0, 0): ()}
    for k in range(order):
        remaining_after = order - k - 1
        nxt = {}
        for rows in level.values():
            for s in _extensions(rows, min_degree, remaining_after):
                child = list(rows) + [s]
                for v in range(k):
                    if s >> v & 1:
                        child[v] |= 1 << k
                child = tuple(child)
                budget.tick()
                key, canon = canonical_form(child)
                nxt.setdefault(key, canon)
        level = dict(sorted(nxt.items()))
    return level


def enumerate_c4free(order: int, min_degree: int | None = None, *, budget_seconds=None,
                     budget_graphs=None, max_order: int = MAX_FULL_ORDER):
    """Every isomorphism class of C4-free graph on ``order`` vertices exactly once,
    in canonical order, optionally restricted to minimum degree >= ``min_degree``.

    Raises :class:`BudgetExceeded` if the budget runs out.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > max_order:
        raise BudgetExceeded(f"order {order} exceeds the enumeration limit {max_order}")
    budget = _Budget(budget_seconds, budget_graphs)
    reps = _level_reps(order, min_degree, budget)
    for rows in reps.values():
        yield Graph.from_bitrows(rows)


def star_ramsey_bound(n: int) -> int:
    """An upper bound on r(C4, K_{1,n}); r(C4, K_2) = 4 covers n = 1."""
    return 4 if n == 1 else star_upper(n)


@dataclass
class SearchOutcome:
    n: int
    R: int
    status: str  # confirmed | refuted | inconclusive
    witness: bytes | None = None
    impossibility: bool | None = None
    graphs_examined: int = 0
    elapsed: float = 0.0
    audited: int = 0
    detail: str = ""
    counterexample: bytes | None = field(default=None, repr=False)

    @property
    def confirmed(self) -> bool:
        return self.status == "confirmed"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "R": self.R,
            "status": self.status,
            "witness": self.witness.decode() if self.witness else None,
            "impossibility": self.impossibility,
            "graphs_examined": self.graphs_examined,
            "audited": self.audited,
            "elapsed": round(self.elapsed, 3),
            "detail": self.detail,
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"{k}: {'-' if v is None else v}" for k, v in d.items() if k != "elapsed"]
        return "\n".join(lines)


def verify_exact(n: int, R: int, *, budget_seconds: float | None = None, budget_graphs: int | None = None,
                 audit_fraction: float = 0.01, seed: int = 0) -> SearchOutcome:
    """Confirm r(C4, B_n) = R: a witness on R-1 vertices and none on R vertices.

    Budget exhaustion yields ``inconclusive``, never a confirmation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    limit = MAX_FULL_ORDER if budget_seconds is None and budget_graphs is None else MAX_PRUNED_ORDER
    if R > limit:
        raise ValueError(f"R={R} exceeds the supported limit {limit}")
    start = time.monotonic()
    out = SearchOutcome(n, R, "inconclusive")
    star = star_ramsey_bound(n)
    try:
        def remaining():
            if budget_seconds is None:
                return None
            return max(budget_seconds - (time.monotonic() - start), 0.0)

        # witness on R-1 vertices: complement degrees stay below the star bound
        for g in enumerate_c4free(R - 1, max(R - 1 - star, 0) or None, budget_seconds=remaining(),
                                  budget_graphs=budget_graphs, max_order=limit):
            out.graphs_examined += 1
            if verify_witness(g, n).valid:
                out.witness = encode_graph6(g)
                break
        if out.witness is None:
            out.status = "refuted"
            out.detail = f"no witness on {R - 1} vertices: r(C4,B{n}) <= {R - 1}"
            return out

        rng = random.Random(seed)
        rejected = []
        for g in enumerate_c4free(R, max(R - star, 0) or None, budget_seconds=remaining(),
                                  budget_graphs=budget_graphs, max_order=limit):
            out.graphs_examined += 1
            report = verify_witness(g, n)
            if report.valid:
                out.status = "refuted"
                out.impossibility = False
                out.counterexample = encode_graph6(g)
                out.detail = f"valid graph on {R} vertices: r(C4,B{n}) > {R}"
                return out
            rejected.append(g)
        out.impossibility = True

        # Audit: re-check a seeded sample with the bitset oracle.  Where the
        # order allows it the sample is drawn from the unpruned enumeration,
        # so graphs removed by the degree bound are re-checked too.
        if R <= MAX_FULL_ORDER:
            pool = list(enumerate_c4free(R, budget_seconds=remaining(), max_order=limit))
        else:
            pool = rejected
        k = min(len(pool), max(1, round(audit_fraction * len(pool)))) if pool else 0
        for g in rng.sample(pool, k):
            rows = graph_rows(g)
            book = explicit_book_size(rows)
            if rows_contain_c4(rows) or book is None or book < n:
                raise AssertionError(f"audit found an unrejected graph {encode_graph6(g)!r}")
            out.audited += 1
        out.status = "confirmed"
        out.detail = f"r(C4,B{n}) = {R}"
        return out
    except BudgetExceeded as exc:
        out.status = "inconclusive"
        out.detail = str(exc)
        return out
    finally:
        out.elapsed = time.monotonic() - start
