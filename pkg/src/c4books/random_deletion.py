"""Lower-bound certificates from ER_p with a random set of vertices deleted.

For a target book size n, take the smallest prime p >= sqrt(n) + 1/2, delete
d = p^2+p+1-(n+2m) uniformly random vertices of ER_p and keep the result if
every survivor still has degree >= m.  Two non-adjacent survivors then share
at most n-1 common non-neighbours, so the survivor graph certifies
r(C4, B_n) > n + 2m.

The degree check runs on point coordinates, without the adjacency matrix, so
it scales to large p.  Certification rebuilds the survivor graph and hands it
to :func:`verify_witness`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, isqrt

import mpmath
import numpy as np

from .bounds import asymptotic_floor_part
from .finite_field import is_prime
from .graph_core import Graph, encode_graph6
from .projective_plane import point_index_array
from .witness import WitnessReport, verify_witness

ALPHA = Fraction(21, 40)
# survivor graphs above this order are not certified (dense n^2 adjacency)
CERTIFY_LIMIT = 16000


class VacuousParameters(ValueError):
    """The derived minimum degree m is not positive, so no bound results."""


class PrimeGapViolation(AssertionError):
    """The prime found for n lies above sqrt(n) + n^(alpha/2) + 1."""


class TrialsExhausted(RuntimeError):
    """No trial succeeded within the allowed number; inconclusive, not a refutation."""

    def __init__(self, message, reports):
        super().__init__(message)
        self.reports = reports


def smallest_prime_at_least(x) -> int:
    """Smallest prime >= ceil(x), for x >= 2 (int, Fraction or float)."""
    x = Fraction(x)
    if x < 2:
        raise ValueError("x must be >= 2")
    k = ceil(x)
    while not is_prime(k):
        k += 1
    return k


def _prime_floor(n: int) -> int:
    # smallest integer p with p >= sqrt(n) + 1/2, i.e. (2p - 1)^2 >= 4n
    p = (isqrt(4 * n) + 1) // 2
    while (2 * p - 1) ** 2 < 4 * n:
        p += 1
    while p > 1 and (2 * p - 3) ** 2 >= 4 * n:
        p -= 1
    return p


@dataclass(frozen=True)
class TrialParams:
    n: int
    m: int
    p: int
    N: int
    d: int
    seed: int
    alpha: Fraction = ALPHA

    @property
    def surviving_order(self) -> int:
        return self.n + 2 * self.m

    @classmethod
    def derive(cls, n: int, seed: int = 0) -> "TrialParams":
        if n < 1:
            raise ValueError("n must be >= 1")
        m = asymptotic_floor_part(n)
        if m <= 0:
            raise VacuousParameters(f"n={n} gives m={m} <= 0; the construction is vacuous")
        p = smallest_prime_at_least(max(_prime_floor(n), 2))
        _check_prime_gap(n, p)
        N = p * p + p + 1
        d = N - (n + 2 * m)
        if d < 0:
            raise VacuousParameters(f"n={n} needs {n + 2 * m} survivors but ER_{p} has {N} vertices")
        return cls(n, m, p, N, d, seed)


def _check_prime_gap(n: int, p: int):
    """p <= sqrt(n) + n^(alpha/2) + 1 must hold; checked against the lower
    endpoint of an interval enclosure so a violation is never missed."""
    iv = mpmath.iv
    saved = iv.prec
    iv.prec = 200
    try:
        limit = iv.sqrt(iv.mpf(n)) + iv.mpf(n) ** (iv.mpf(21) / 80) + 1
        ok = p <= limit.a
    finally:
        iv.prec = saved
    if not ok:
        raise PrimeGapViolation(f"prime p={p} exceeds sqrt(n) + n^(alpha/2) + 1 for n={n}")


@dataclass(frozen=True)
class TrialReport:
    params: TrialParams
    success: bool
    surviving_order: int
    bad_vertices: int
    deleted: tuple[int, ...] = field(repr=False)
    witness: WitnessReport | None = None
    note: str = ""
    graph: Graph | None = field(default=None, repr=False, compare=False)

    @property
    def certified(self) -> bool:
        return self.witness is not None and self.witness.valid

    @property
    def certificate(self) -> str | None:
        if not self.certified:
            return None
        return f"r(C4,B{self.params.n}) > {self.surviving_order}"

    def graph6(self) -> bytes:
        if self.graph is None:
            raise ValueError("no survivor graph was kept for this trial")
        return encode_graph6(self.graph)

    def to_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n, "m": p.m, "p": p.p, "N": p.N, "d": p.d, "seed": p.seed,
            "success": self.success,
            "surviving_order": self.surviving_order,
            "bad_vertices": self.bad_vertices,
            "certified": self.certified,
            "certificate": self.certificate,
            "note": self.note,
        }

    def to_text(self) -> str:
        return "\n".join(f"{k}: {'-' if v is None else v}" for k, v in self.to_dict().items())


def surviving_degrees(p: int, deleted: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(survivor indices, their degrees in ER_p minus ``deleted``), from coordinates."""
    pts = point_index_array(p, 1)
    N = len(pts)
    self_orth = (pts * pts).sum(axis=1) % p == 0
    base = np.where(self_orth, p, p + 1).astype(np.int64)
    lost = np.zeros(N, dtype=np.int64)
    for s in range(0, len(deleted), 256):
        block = pts[deleted[s:s + 256]]
        hits = (block @ pts.T) % p == 0
        lost += hits.sum(axis=0)
    # a deleted point orthogonal to itself counted itself; it is not a survivor
    keep = np.ones(N, dtype=bool)
    keep[deleted] = False
    survivors = np.flatnonzero(keep)
    return survivors, (base - lost)[survivors]


def run_trial(n: int, seed: int = 0, *, certify: bool = True, keep_graph: bool = True) -> TrialReport:
    """One seeded deletion trial.  With ``certify`` a successful survivor graph
    is rebuilt and independently checked by :func:`verify_witness`."""
    params = TrialParams.derive(n, seed)
    rng = np.random.default_rng(seed)
    deleted = np.sort(rng.permutation(params.N)[: params.d])
    survivors, degs = surviving_degrees(params.p, deleted)
    bad = int((degs < params.m).sum())
    success = bad == 0
    witness, graph, note = None, None, ""
    if success and certify:
        if len(survivors) > CERTIFY_LIMIT:
            note = f"not certified: {len(survivors)} survivors exceed the dense limit {CERTIFY_LIMIT}"
        else:
            from .constructions import er_graph

            graph = er_graph(params.p).graph.induced(survivors)
            witness = verify_witness(graph, n)
            if int(graph.degrees.min()) != int(degs.min()):
                raise AssertionError("coordinate degree count disagrees with the adjacency matrix")
            if not witness.valid:
                note = f"survivor graph failed verification: {witness.failure}"
    return TrialReport(
        params=params,
        success=success,
        surviving_order=int(len(survivors)),
        bad_vertices=bad,
        deleted=tuple(deleted.tolist()),
        witness=witness,
        note=note,
        graph=graph if keep_graph else None,
    )


def retry_until_witness(n: int, max_trials: int = 5, *, seed: int = 0, certify: bool = True) -> TrialReport:
    """First successful trial over seeds seed, seed+1, ...; raises
    :class:`TrialsExhausted` if none succeeds."""
    if max_trials < 1:
        raise ValueError("max_trials must be >= 1")
    TrialParams.derive(n, seed)  # surfaces vacuous parameters before any work
    reports = []
    for k in range(max_trials):
        rep = run_trial(n, seed + k, certify=certify)
        reports.append(rep)
        if rep.success and (not certify or rep.certified or rep.witness is None):
            return rep
    raise TrialsExhausted(f"no witness for n={n} in {max_trials} trials", reports)


def failure_rate(n: int, seeds) -> float:
    """Fraction of uncertified trials whose survivors miss the degree bound."""
    seeds = list(seeds)
    fails = sum(not run_trial(n, s, certify=False, keep_graph=False).success for s in seeds)
    return fails / len(seeds)
