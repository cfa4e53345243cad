"""Certify Ramsey lower-bound witnesses for r(C4, B_n)."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .finite_field import prime_power
from .graph_core import Graph, c4_and_book, min_degree


class OrderMismatchError(ValueError):
    """The candidate graph does not have the order the membership test requires."""


@dataclass(frozen=True)
class WitnessReport:
    order: int
    c4_free: bool
    min_degree: int
    book_max: int | None
    claimed_n: int
    valid: bool
    failure: str | None = None
    evidence: tuple | None = None

    @property
    def statement(self) -> str | None:
        if not self.valid:
            return None
        return f"r(C4,B{self.claimed_n}) >= {self.order + 1}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["statement"] = self.statement
        d["evidence"] = list(self.evidence) if self.evidence is not None else None
        return d

    def to_text(self) -> str:
        book = "none" if self.book_max is None else str(self.book_max)
        lines = [
            f"order: {self.order}",
            f"claimed_n: {self.claimed_n}",
            f"c4_free: {str(self.c4_free).lower()}",
            f"min_degree: {self.min_degree}",
            f"book_max: {book}",
            f"verdict: {'valid' if self.valid else 'invalid'}",
        ]
        if self.valid:
            lines.append(f"certifies: {self.statement}")
        else:
            lines.append(f"failure: {self.failure}")
            lines.append(f"evidence: {' '.join(map(str, self.evidence or ()))}")
        return "\n".join(lines)


def find_c4(g: Graph) -> tuple[int, int, int, int] | None:
    """A 4-cycle (u, a, v, b) as a vertex tuple, or None."""
    adj = g.adjacency
    for u in range(g.n):
        nb = g.neighbors(u)
        if len(nb) < 2:
            continue
        counts = adj[nb].sum(axis=0)
        counts[u] = 0
        hits = np.flatnonzero(counts >= 2)
        if hits.size:
            v = int(hits[0])
            a, b = np.flatnonzero(adj[u] & adj[v])[:2].tolist()
            return (u, a, v, b)
    return None


def find_book(g: Graph, pages: int, block: int = 512) -> tuple[int, ...] | None:
    """Spine (u, v) of a complement book with ``pages`` pages, followed by the pages."""
    adj = g.adjacency
    for u in range(g.n):
        outside = ~adj[u]
        outside[u] = False
        cand = np.flatnonzero(outside)
        cand = cand[cand > u]
        for s in range(0, cand.size, block):
            vs = cand[s:s + block]
            common = ~adj[vs] & outside[None, :]
            common[np.arange(vs.size), vs] = False
            hit = np.flatnonzero(common.sum(axis=1) >= pages)
            if hit.size:
                i = int(hit[0])
                return (u, int(vs[i])) + tuple(np.flatnonzero(common[i])[:pages].tolist())
    return None


def verify_witness(g: Graph, n: int) -> WitnessReport:
    """Recompute every predicate from the adjacency structure.

    A valid report certifies r(C4, B_n) >= |V(g)| + 1.
    """
    if n < 1:
        raise ValueError("book size must be >= 1")
    has_c4, book = c4_and_book(g)
    common = dict(order=g.n, c4_free=not has_c4, min_degree=min_degree(g), book_max=book, claimed_n=n)
    if has_c4:
        return WitnessReport(**common, valid=False, failure="contains C4", evidence=find_c4(g))
    if book is not None and book >= n:
        return WitnessReport(
            **common,
            valid=False,
            failure=f"complement contains B{n}",
            evidence=find_book(g, n),
        )
    return WitnessReport(**common, valid=True)


def check_extremal_candidate(g: Graph, q: int) -> bool:
    """Is ``g`` in the class of C4-free graphs on q^2+q+3 vertices whose
    complement has no B_{q^2-q+1}?

    Raises :class:`OrderMismatchError` for graphs of any other order.
    """
    if q < 3 or prime_power(q) is None:
        raise ValueError(f"q={q} must be a prime power >= 3")
    order = q * q + q + 3
    if g.n != order:
        raise OrderMismatchError(f"expected {order} vertices for q={q}, got {g.n}")
    return verify_witness(g, q * q - q + 1).valid
