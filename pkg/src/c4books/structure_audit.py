"""Local structure around a vertex of a C4-free graph, as checkable predicates.

Around a vertex v with neighbours v_1..v_m the vertex set splits into
{v}, N(v), the sets A_i = N(v_i) minus N[v], and the remainder B.  B_i is the
part of B reached from A_i.  Every check returns evidence tuples that can be
re-checked with plain adjacency lookups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import ceil

from .constructions import FrameError, build_frame, er_graph
from .finite_field import prime_power
from .graph_core import Graph, contains_c4, diameter


@dataclass(frozen=True)
class PartitionDecomposition:
    v: int
    neighbors: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]
    Bsets: tuple[tuple[int, ...], ...]
    B: tuple[int, ...]
    tau: int  # neighbours of v with degree m
    sigma: int  # neighbours of v with degree >= m + 2
    eN: int  # edges inside N(v)
    graph: Graph = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.neighbors)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    evidence: tuple | None = None
    note: str = ""

    def line(self) -> str:
        ev = "-" if self.evidence is None else " ".join(map(str, self.evidence))
        status = "pass" if self.passed else "fail"
        return f"{self.name}\t{status}\t{ev}" + (f"\t{self.note}" if self.note else "")


@dataclass(frozen=True)
class AuditReport:
    subject: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks)

    def to_text(self) -> str:
        return "\n".join([f"# {self.subject}"] + [c.line() for c in self.checks])

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 "evidence": None if c.evidence is None else list(c.evidence), "note": c.note}
                for c in self.checks
            ],
        }


def _neighbor_sets(g: Graph) -> list[set[int]]:
    return [set(g.neighbors(v).tolist()) for v in range(g.n)]


def _edges_within(nb, xs) -> int:
    xs = set(xs)
    return sum(len(nb[x] & xs) for x in xs) // 2


def _edges_between(nb, xs, ys) -> int:
    ys = set(ys)
    return sum(len(nb[x] & ys) for x in xs)


def min_degree_vertex(g: Graph) -> int:
    """Lowest-index vertex of minimum degree."""
    if g.n == 0:
        raise ValueError("empty graph")
    degs = g.degrees
    return int(degs.argmin())


def decompose(g: Graph, v: int, *, allow_c4: bool = False, _nb=None) -> PartitionDecomposition:
    """Split V(g) around ``v``.  Raises ValueError when g contains a C4
    (unless ``allow_c4``, which lets the checks below be exercised on
    graphs that violate their premise) or when v is isolated."""
    if not allow_c4 and contains_c4(g):
        raise ValueError("graph contains a C4")
    nb = _nb if _nb is not None else _neighbor_sets(g)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if not nb[v]:
        raise ValueError(f"vertex {v} is isolated")
    nbrs = tuple(sorted(nb[v]))
    closed = set(nbrs) | {v}
    A = tuple(tuple(sorted(nb[w] - closed)) for w in nbrs)
    union_a = set().union(*A)
    Bsets = []
    for w, a in zip(nbrs, A):
        reach = set().union(*(nb[x] for x in a)) if a else set()
        Bsets.append(tuple(sorted(reach - union_a - {w})))
    B = tuple(x for x in range(g.n) if x not in closed and x not in union_a)
    m = len(nbrs)
    degs = [len(nb[w]) for w in nbrs]
    return PartitionDecomposition(
        v=v,
        neighbors=nbrs,
        A=A,
        Bsets=tuple(Bsets),
        B=B,
        tau=sum(d == m for d in degs),
        sigma=sum(d >= m + 2 for d in degs),
        eN=_edges_within(nb, nbrs),
        graph=g,
    )


def check_neighbor_degree_sum(d: PartitionDecomposition) -> bool:
    """sum d(v_i) == m + sum |A_i| + 2 e(N(v))."""
    degs = d.graph.degrees
    lhs = int(sum(int(degs[w]) for w in d.neighbors))
    return lhs == d.m + sum(len(a) for a in d.A) + 2 * d.eN


def check_a_set_degree_sum(d: PartitionDecomposition, i: int, _nb=None) -> bool:
    """sum_{x in A_i} (d(x) - 1) == 2 e(A_i) + sum_{j != i} e(A_i, A_j) + |B_i|  (0-based i)."""
    nb = _nb if _nb is not None else _neighbor_sets(d.graph)
    a = d.A[i]
    lhs = sum(len(nb[x]) - 1 for x in a)
    cross = sum(_edges_between(nb, a, d.A[j]) for j in range(d.m) if j != i)
    return lhs == 2 * _edges_within(nb, a) + cross + len(d.Bsets[i])


def _matching_violation(nb, xs, ys=None):
    """First vertex with two neighbours on the other side, as (x, y1, y2)."""
    if ys is None:
        xs_set = set(xs)
        for x in xs:
            hit = sorted(nb[x] & xs_set)
            if len(hit) >= 2:
                return (x, hit[0], hit[1])
        return None
    ys_set, xs_set = set(ys), set(xs)
    for x in xs:
        hit = sorted(nb[x] & ys_set)
        if len(hit) >= 2:
            return (x, hit[0], hit[1])
    for y in ys:
        hit = sorted(nb[y] & xs_set)
        if len(hit) >= 2:
            return (y, hit[0], hit[1])
    return None


def local_structure_checks(d: PartitionDecomposition, _nb=None) -> list[CheckResult]:
    """The six local properties forced by C4-freeness, for one decomposition.

    Evidence tuples start with the centre vertex v; set indices are 0-based.
    """
    nb = _nb if _nb is not None else _neighbor_sets(d.graph)
    g, v, m = d.graph, d.v, d.m
    out = []

    # 1. every vertex neighbourhood spans a matching (checked at all u)
    ev = None
    for u in range(g.n):
        bad = _matching_violation(nb, sorted(nb[u]))
        if bad:
            ev = (u,) + bad
            break
    out.append(CheckResult("neighbourhood_edges_matching", ev is None, ev))

    ev = None
    for i in range(m):
        bad = _matching_violation(nb, d.A[i])
        if bad:
            ev = (v, i) + bad
            break
    out.append(CheckResult("a_set_edges_matching", ev is None, ev))

    ev = None
    for i, j in combinations(range(m), 2):
        common = sorted(set(d.A[i]) & set(d.A[j]))
        if common:
            ev = (v, i, j, common[0])
            break
    out.append(CheckResult("a_sets_disjoint", ev is None, ev))

    ev = None
    for i, j in combinations(range(m), 2):
        bad = _matching_violation(nb, d.A[i], d.A[j])
        if bad:
            ev = (v, i, j) + bad
            break
    out.append(CheckResult("a_set_cross_edges_matching", ev is None, ev))

    ev = None
    for i, j in combinations(range(m), 2):
        if d.neighbors[j] in nb[d.neighbors[i]]:
            aj = set(d.A[j])
            for x in d.A[i]:
                hit = sorted(nb[x] & aj)
                if hit:
                    ev = (v, i, j, x, hit[0])
                    break
        if ev:
            break
    out.append(CheckResult("adjacent_hubs_no_cross_edges", ev is None, ev))

    ev = None
    for i in range(m):
        ai = set(d.A[i])
        for b in d.Bsets[i]:
            k = len(nb[b] & ai)
            if k != 1:
                ev = (v, i, b, k)
                break
        if ev:
            break
    out.append(CheckResult("b_vertex_unique_a_neighbour", ev is None, ev))
    return out


def audit_graph(g: Graph, vertices=None, *, subject: str | None = None) -> AuditReport:
    """Degree-sum identities and the six local properties at every
    non-isolated vertex (or the given ``vertices``) of a C4-free graph."""
    if contains_c4(g):
        raise ValueError("graph contains a C4")
    nb = _neighbor_sets(g)
    if vertices is None:
        vertices = [v for v in range(g.n) if nb[v]]
    agg: dict[str, CheckResult] = {}
    order = []

    def record(res: CheckResult):
        if res.name not in agg:
            order.append(res.name)
            agg[res.name] = res
        elif agg[res.name].passed and not res.passed:
            agg[res.name] = res

    for v in vertices:
        d = decompose(g, v, allow_c4=True, _nb=nb)
        ok = check_neighbor_degree_sum(d)
        record(CheckResult("neighbour_degree_sum", ok, None if ok else (v,)))
        bad = next((i for i in range(d.m) if not check_a_set_degree_sum(d, i, nb)), None)
        record(CheckResult("a_set_degree_sum", bad is None, None if bad is None else (v, bad)))
        for res in local_structure_checks(d, nb):
            record(res)
    return AuditReport(subject or f"graph on {g.n} vertices", tuple(agg[k] for k in order))


def check_local_structure(g: Graph) -> AuditReport:
    """The six local properties at every admissible centre vertex."""
    if contains_c4(g):
        raise ValueError("graph contains a C4")
    nb = _neighbor_sets(g)
    agg: dict[str, CheckResult] = {}
    order = []
    for v in range(g.n):
        if not nb[v]:
            continue
        for res in local_structure_checks(decompose(g, v, allow_c4=True, _nb=nb), nb):
            if res.name not in agg:
                order.append(res.name)
                agg[res.name] = res
            elif agg[res.name].passed and not res.passed:
                agg[res.name] = res
    if not order:
        # edgeless graph: every part holds vacuously
        names = ["neighbourhood_edges_matching", "a_set_edges_matching", "a_sets_disjoint",
                 "a_set_cross_edges_matching", "adjacent_hubs_no_cross_edges", "b_vertex_unique_a_neighbour"]
        return AuditReport(f"graph on {g.n} vertices", tuple(CheckResult(n, True) for n in names))
    return AuditReport(f"graph on {g.n} vertices", tuple(agg[k] for k in order))


# -- polarity graph structure ------------------------------------------------------

def _perfect_matching_violation(nb, xs, ys):
    if len(xs) != len(ys):
        return ("sizes", len(xs), len(ys))
    ys_set, xs_set = set(ys), set(xs)
    for x in xs:
        k = len(nb[x] & ys_set)
        if k != 1:
            return (x, k)
    for y in ys:
        k = len(nb[y] & xs_set)
        if k != 1:
            return (y, k)
    return None


def audit_er_structure(q: int) -> AuditReport:
    """Structural facts about ER_q for a prime power 2 <= q <= 16."""
    if not 2 <= q <= 16 or prime_power(q) is None:
        raise ValueError(f"q={q} must be a prime power with 2 <= q <= 16")
    er = er_graph(q)
    g = er.graph
    nb = _neighbor_sets(g)
    degs = [len(s) for s in nb]
    low = sorted(v for v in range(g.n) if degs[v] == q)
    checks = []

    def add(name, ev, note=""):
        checks.append(CheckResult(name, ev is None, ev, note))

    add("order", None if g.n == q * q + q + 1 else (g.n,))
    bad = next((v for v in range(g.n) if degs[v] not in (q, q + 1)), None)
    add("degrees_q_or_q_plus_1", None if bad is None else (bad, degs[bad]))
    absolute = sorted(er.absolute)
    add("absolute_points_are_degree_q", None if absolute == low else tuple(sorted(set(absolute) ^ set(low))))
    add("degree_q_count", None if len(low) == q + 1 else (len(low),))
    pair = next(((a, b) for a, b in combinations(low, 2) if b in nb[a]), None)
    add("degree_q_independent", pair)
    add("c4_free", None if not contains_c4(g) else ("c4",))
    diam = diameter(g)
    add("diameter_two", None if diam == 2 else (diam,))

    even = q % 2 == 0
    hub = er.vertex(1, 1, 1) if even else er.vertex(0, 0, 1)
    w = sorted(nb[hub])
    closed = set(w) | {hub}
    A = [sorted(nb[x] - closed) for x in w]
    seen, overlap = set(), None
    for i, a in enumerate(A):
        if seen & set(a):
            overlap = (i, min(seen & set(a)))
            break
        seen |= set(a)
    covered = overlap is None and len(seen) + len(closed) == g.n
    add("hub_partition", None if covered else (overlap or ("uncovered", g.n - len(seen) - len(closed))))

    if even:
        add("hub_neighbourhood_is_degree_q_set", None if w == low else tuple(sorted(set(w) ^ set(low))))
        bad = next(((w[i], len(a)) for i, a in enumerate(A) if len(a) != q - 1), None)
        add("a_set_size_q_minus_1", bad)
        ev = None
        for i, j in combinations(range(len(w)), 2):
            viol = _perfect_matching_violation(nb, A[i], A[j])
            if viol:
                ev = (i, j) + viol
                break
        add("a_sets_perfect_matching", ev)
        ev = None
        for i, a in enumerate(A):
            e = next(((x, y) for x, y in combinations(a, 2) if y in nb[x]), None)
            if e:
                ev = (i,) + e
                break
        add("a_sets_independent", ev)
    elif q >= 5:
        ev = None
        for i, j in combinations(range(len(w)), 2):
            for a, b in ((i, j), (j, i)):
                if degs[w[a]] == q + 1 and w[b] not in nb[w[a]]:
                    viol = _perfect_matching_violation(nb, A[a], A[b])
                    if viol:
                        ev = (a, b) + viol
                        break
            if ev:
                break
        add("nonadjacent_a_sets_perfect_matching", ev)
        sees_two = [sum(1 for y in nb[x] if degs[y] == q) for x in w]
        low_w = [x for x in w if degs[x] == q]
        rest = [x for x in w if degs[x] == q + 1]
        matching = _perfect_matching_violation(nb, rest, rest) if rest else None
        if q % 4 == 3:
            add("hub_neighbours_all_degree_q_plus_1", None if not low_w else tuple(low_w))
            add("hub_neighbourhood_perfect_matching", matching)
            k = sum(1 for s in sees_two if s == 2)
            add("half_see_two_degree_q", None if k == (q + 1) // 2 else (k,))
        else:
            ok = len(low_w) == 2 and low_w[1] not in nb[low_w[0]]
            add("two_nonadjacent_degree_q_hub_neighbours", None if ok else tuple(low_w))
            add("remaining_hub_neighbourhood_perfect_matching", matching)
            k = sum(1 for x, s in zip(w, sees_two) if s == 2 and degs[x] == q + 1)
            add("half_see_two_degree_q", None if k == (q - 1) // 2 else (k,))
        try:
            frame = build_frame(er)
            fw = frame.w
            pairs_ok = all(fw[i + 1] in nb[fw[i]] for i in range(0, len(rest), 2))
            lead = (q + 1) // 2 if q % 4 == 3 else (q - 1) // 2
            lead_ok = all(sum(degs[y] == q for y in nb[x]) == 2 for x in fw[:lead])
            add("ordered_frame", None if pairs_ok and lead_ok else ("pairs" if not pairs_ok else "lead",))
        except FrameError as exc:
            add("ordered_frame", ("frame",), str(exc))
    return AuditReport(f"ER_{q}", tuple(checks))


# -- claims about hypothetical extremal graphs ---------------------------------------

def counterexample_hypotheses(g: Graph, m: int, t: int) -> CheckResult:
    """Does g have order m^2+t, no C4, and no B_{(m-1)^2+t-2} in its complement?"""
    from .witness import verify_witness

    if m < 4 or not 0 <= t <= m - 1:
        raise ValueError("need m >= 4 and 0 <= t <= m-1")
    if g.n != m * m + t:
        return CheckResult("hypotheses", False, (g.n,), f"order is not {m * m + t}")
    rep = verify_witness(g, (m - 1) ** 2 + t - 2)
    if not rep.valid:
        return CheckResult("hypotheses", False, rep.evidence, rep.failure or "")
    return CheckResult("hypotheses", True)


def check_counterexample_claims(g: Graph, m: int, t: int) -> AuditReport:
    """Evaluate the consequences forced on an order m^2+t graph with no C4 and no
    B_{(m-1)^2+t-2} in the complement.  No such graph exists, so on any input
    either the hypotheses fail or some claim check fails; ``exposed`` in the
    subject line records which."""
    hyp = counterexample_hypotheses(g, m, t)
    checks = [hyp]
    nb = _neighbor_sets(g)
    degs = [len(s) for s in nb]
    delta = min(degs) if degs else 0
    checks.append(CheckResult("min_degree_equals_m", delta == m, None if delta == m else (delta,)))

    deg_m = [v for v in range(g.n) if degs[v] == m]
    ev = None
    for a, b in combinations(deg_m, 2):
        if b not in nb[a] and len(nb[a] & nb[b]) == 1:
            ev = (a, b)
            break
    checks.append(CheckResult("degree_m_pairs_adjacent", ev is None, ev))

    if deg_m and not contains_c4(g):
        v = deg_m[0]
        d = decompose(g, v, allow_c4=True, _nb=nb)
        heavy = [w for w in d.neighbors if degs[w] == m]
        checks.append(CheckResult("at_most_two_degree_m_neighbours", len(heavy) <= 2,
                                  None if len(heavy) <= 2 else (v,) + tuple(heavy[:3])))
        ev = next(((v, i, x) for i, a in enumerate(d.A) for x in a if degs[x] < m + 1), None)
        checks.append(CheckResult("a_set_degrees_above_m", ev is None, ev))
        ev = None
        nset = set(d.neighbors)
        for i, w in enumerate(d.neighbors):
            if nb[w] & nset and len(d.Bsets[i]) < len(d.A[i]):
                ev = (v, i, len(d.Bsets[i]), len(d.A[i]))
                break
        checks.append(CheckResult("b_set_at_least_a_set", ev is None, ev))
        need = ceil((m - 2) / 2)
        checks.append(CheckResult("neighbourhood_edge_count", d.eN >= need,
                                  None if d.eN >= need else (v, d.eN, need)))
    else:
        note = "no vertex of degree m" if not deg_m else "graph contains a C4"
        for name in ("at_most_two_degree_m_neighbours", "a_set_degrees_above_m",
                     "b_set_at_least_a_set", "neighbourhood_edge_count"):
            checks.append(CheckResult(name, True, None, f"vacuous: {note}"))

    exposed = (not hyp.passed) or any(not c.passed for c in checks[1:])
    subject = f"order {g.n}, m={m}, t={t}, contradiction {'exposed' if exposed else 'NOT exposed'}"
    return AuditReport(subject, tuple(checks))


def contradiction_exposed(report: AuditReport) -> bool:
    return not report.passed
