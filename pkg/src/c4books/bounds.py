"""Closed-form bounds on r(C4, B_n) and a best-known aggregator.

All square roots are exact integer square roots.  The only real power,
n^0.2625 in :func:`asymptotic_lower`, is evaluated in interval arithmetic and
floored from the lower endpoint so the result never overstates the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

import mpmath

from .finite_field import prime_power

KNOWN_SMALL_VALUES = {1: 7, 2: 7, 3: 9, 4: 11, 5: 12, 6: 13, 7: 16, 8: 17, 9: 18, 10: 19, 11: 20, 12: 21, 13: 22, 14: 24}
CERTIFIED_Q = (4, 5, 7, 8, 9, 11, 13, 16)
VACUOUS = "vacuous"
MONO = "monotonicity-extended"


def g_frs(n: int) -> int:
    return n + isqrt(n - 1) + 2


def frs_upper(n: int) -> int:
    """g(g(n)) with g(n) = n + floor(sqrt(n-1)) + 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return g_frs(g_frs(n))


def frs_simplified_upper(n: int) -> int:
    return n + 2 * isqrt(n) + 5


def mt_cases(limit_m: int | None = None):
    """Yield (m, t, book size, bound) for m >= 4, 0 <= t <= m-1, in increasing book size."""
    m = 4
    while limit_m is None or m <= limit_m:
        for t in range(m):
            yield m, t, (m - 1) ** 2 + t - 2, m * m + t
        m += 1


def mt_upper_detail(n: int):
    """Smallest m^2+t over admissible (m, t) whose book size is >= n, with (m, t)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # the largest book size reachable with a given m is (m-1)^2 + m - 3
    m = max(4, isqrt(max(n - 1, 0)))
    while m > 4 and (m - 2) ** 2 + m - 4 >= n:
        m -= 1
    while (m - 1) ** 2 + m - 3 < n:
        m += 1
    t = max(0, n - (m - 1) ** 2 + 2)
    return m * m + t, (m, t)


def mt_upper(n: int):
    """Upper bound from the (m, t) family, or None when it is worse than frs_upper."""
    bound, _ = mt_upper_detail(n)
    return bound if bound <= frs_upper(n) else None


def star_upper(n: int) -> int:
    """Upper bound on r(C4, K_{1,n}) for n >= 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    bound = n + isqrt(n - 1) + 2
    k = isqrt(n - 1)
    if k >= 1 and k * k + 1 == n:
        bound -= 1
    return bound


def asymptotic_floor_part(n: int) -> int:
    """floor(sqrt(n) - 6 n^0.2625), rounded toward the sound (smaller) side."""
    iv = mpmath.iv
    saved = iv.prec
    iv.prec = 200
    try:
        x = iv.sqrt(iv.mpf(n)) - 6 * iv.mpf(n) ** (iv.mpf(21) / 80)
        return int(mpmath.floor(x.a))
    finally:
        iv.prec = saved


def asymptotic_lower(n: int):
    """n + 2 floor(sqrt(n) - 6 n^0.2625), or ``"vacuous"`` when the floor is <= 0."""
    m = asymptotic_floor_part(n)
    if m <= 0:
        return VACUOUS
    return n + 2 * m


def frs_prime_power_lower(n: int):
    """q^2+q+2 when n = q^2-q+1 for a prime power q, else None."""
    for q in range(2, isqrt(n) + 2):
        if q * q - q + 1 == n and prime_power(q) is not None:
            return q * q + q + 2
    return None


@dataclass(frozen=True)
class Bound:
    value: int
    provenance: str


@dataclass(frozen=True)
class BoundsRecord:
    n: int
    lower: Bound
    upper: Bound
    exact: Bound | None = None
    certificates: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.lower.value > self.upper.value:
            raise ValueError(f"inconsistent bounds for n={self.n}: {self.lower} > {self.upper}")
        if self.exact and not self.lower.value <= self.exact.value <= self.upper.value:
            raise ValueError(f"exact value outside bounds for n={self.n}")

    def machine_line(self) -> str:
        exact = str(self.exact.value) if self.exact else "-"
        prov = self.exact.provenance if self.exact else f"{self.lower.provenance}; {self.upper.provenance}"
        return f"{self.n}\t{self.lower.value}\t{self.upper.value}\t{exact}\t{prov}"

    def to_text(self) -> str:
        lines = [
            f"n: {self.n}",
            f"lower: {self.lower.value} ({self.lower.provenance})",
            f"upper: {self.upper.value} ({self.upper.provenance})",
        ]
        if self.exact:
            lines.append(f"exact: {self.exact.value} ({self.exact.provenance})")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lower": self.lower.value,
            "lower_provenance": self.lower.provenance,
            "upper": self.upper.value,
            "upper_provenance": self.upper.provenance,
            "exact": self.exact.value if self.exact else None,
            "exact_provenance": self.exact.provenance if self.exact else None,
        }


def construction_params(n: int):
    """(family, q, t) of a certified construction whose book size is exactly n, or None."""
    from .constructions import g_range, h_range

    for q in CERTIFIED_Q:
        t = n - (q - 1) ** 2 + 2
        if q % 2 == 0 and t in h_range(q):
            return "H", q, t
        if q % 2 == 1 and t in g_range(q):
            return "G", q, t
    return None


@lru_cache(maxsize=None)
def construction_certificate(n: int):
    """Build and verify the construction for n; returns the ConstructionResult or None."""
    params = construction_params(n)
    if params is None:
        return None
    from .constructions import build

    return build(*params)


def _upper_candidates(n: int) -> list[Bound]:
    out = []
    # the g(g(n)) bound rests on the star bound, which needs n >= 2
    if n >= 2:
        out.append(Bound(frs_upper(n), "iterated star bound g(g(n))"))
    else:
        out.append(Bound(frs_upper(2), f"iterated star bound g(g(2)), {MONO}"))
    bound, (m, t) = mt_upper_detail(n)
    book = (m - 1) ** 2 + t - 2
    prov = f"m^2+t upper bound (m={m}, t={t})" + ("" if book == n else f", {MONO} from n={book}")
    out.append(Bound(bound, prov))
    return out


def _lower_candidates(n: int, use_certificates: bool) -> tuple[list[Bound], tuple]:
    out = [Bound(n + 2, "trivial: empty graph on n+1 vertices")]
    l1 = asymptotic_lower(n)
    if l1 != VACUOUS:
        out.append(Bound(l1, "random-deletion lower bound"))
    frs = frs_prime_power_lower(n)
    if frs is not None:
        out.append(Bound(frs, "prime-power polarity lower bound q^2+q+2"))
    certs = ()
    if use_certificates:
        cert = construction_certificate(n)
        if cert is not None:
            out.append(Bound(cert.certified_lower, f"verified witness {cert.family}(q={cert.q}, t={cert.t})"))
            certs = (cert.report,)
    return out, certs


def formula_bounds(n: int, use_certificates: bool = True) -> BoundsRecord:
    """Bounds from formulas and verified constructions only; no table lookups."""
    lows, certs = _lower_candidates(n, use_certificates)
    lower = max(lows, key=lambda b: b.value)
    upper = min(_upper_candidates(n), key=lambda b: b.value)
    return BoundsRecord(n, lower, upper, None, certs)


def best_known(n: int) -> BoundsRecord:
    """Formula bounds, pinned to the known exact value for n <= 14 and
    closed wherever a verified construction meets an upper bound."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rec = formula_bounds(n)
    if n in KNOWN_SMALL_VALUES:
        exact = Bound(KNOWN_SMALL_VALUES[n], "known exact value (n <= 14)")
        return BoundsRecord(n, exact, exact, exact, rec.certificates)
    if rec.lower.value == rec.upper.value:
        exact = Bound(rec.lower.value, f"{rec.lower.provenance} + {rec.upper.provenance}")
        return BoundsRecord(n, rec.lower, rec.upper, exact, rec.certificates)
    return rec
