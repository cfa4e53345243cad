from fractions import Fraction
from math import isqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import c4books.random_deletion as rd
from c4books.constructions import er_graph
from c4books.graph_core import decode_graph6
from c4books.random_deletion import (
    PrimeGapViolation,
    TrialParams,
    TrialsExhausted,
    VacuousParameters,
    failure_rate,
    retry_until_witness,
    run_trial,
    smallest_prime_at_least,
    surviving_degrees,
)


def naive_is_prime(k):
    return k >= 2 and all(k % d for d in range(2, isqrt(k) + 1))


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=2, max_value=5000))
def test_smallest_prime_at_least(x):
    p = smallest_prime_at_least(x)
    assert naive_is_prime(p) and p >= x
    assert not any(naive_is_prime(k) and k >= x for k in range(int(x), p))


def test_smallest_prime_examples():
    assert smallest_prime_at_least(Fraction(201, 2)) == 101
    assert smallest_prime_at_least(100.5) == 101
    assert smallest_prime_at_least(2) == 2
    with pytest.raises(ValueError):
        smallest_prime_at_least(1)


def test_parameters_for_ten_thousand():
    p = TrialParams.derive(10_000)
    assert (p.m, p.p, p.N, p.d) == (32, 101, 10303, 239)
    assert p.surviving_order == 10_064


def test_parameters_for_forty_thousand():
    p = TrialParams.derive(40_000)
    assert (p.m, p.p) == (103, 211)
    assert p.surviving_order == 40_206


@settings(max_examples=60, deadline=None)
@given(st.integers(2100, 10**7))
def test_prime_is_smallest_above_threshold(n):
    # the least prime with p >= sqrt(n) + 1/2, decided with integers only
    p = next(k for k in range(2, 2 * isqrt(n) + 10) if naive_is_prime(k) and (2 * k - 1) ** 2 >= 4 * n)
    if p > n ** 0.5 + n ** 0.2625 + 1 + 1e-6:
        with pytest.raises(PrimeGapViolation):
            TrialParams.derive(n)
    else:
        assert TrialParams.derive(n).p == p


def test_prime_gap_guard_band():
    # 113 and 127 are consecutive primes; sqrt(n) + 1/2 just past 113 needs 127
    with pytest.raises(PrimeGapViolation):
        TrialParams.derive(12657)
    with pytest.raises(PrimeGapViolation):
        TrialParams.derive(12991)
    assert TrialParams.derive(12656).p == 113
    assert TrialParams.derive(12992).p == 127


def test_vacuous_range():
    with pytest.raises(VacuousParameters):
        TrialParams.derive(100)
    with pytest.raises(VacuousParameters):
        run_trial(100)
    with pytest.raises(ValueError):
        TrialParams.derive(0)


def test_coordinate_degrees_match_adjacency():
    p = 23
    rng = np.random.default_rng(5)
    g = er_graph(p).graph
    deleted = np.sort(rng.choice(g.n, size=60, replace=False))
    survivors, degs = surviving_degrees(p, deleted)
    keep = np.setdiff1d(np.arange(g.n), deleted)
    assert survivors.tolist() == keep.tolist()
    assert degs.tolist() == g.induced(keep).degrees.tolist()


def independent_certificate(g, n):
    """Oracle: common-neighbour counts by integer matmul, on the graph and its complement."""
    a = g.adjacency.astype(np.float64)  # BLAS path; counts stay exact
    common = a @ a
    np.fill_diagonal(common, 0)
    if common.max() >= 2:
        return False
    b = 1 - a
    np.fill_diagonal(b, 0)
    pages = b @ b
    return int(pages[b.astype(bool)].max()) < n


def test_trial_is_certified_independently():
    rep = run_trial(3000, seed=0)
    assert rep.success and rep.certified
    assert rep.certificate == "r(C4,B3000) > 3010"
    g = decode_graph6(rep.graph6())
    assert g.n == rep.surviving_order == 3010
    assert int(g.degrees.min()) >= rep.params.m
    assert independent_certificate(g, 3000)


def test_ten_thousand_certified():
    rep = retry_until_witness(10_000)
    assert rep.certified and rep.certificate == "r(C4,B10000) > 10064"


def test_determinism():
    a = run_trial(5000, seed=3, keep_graph=False)
    b = run_trial(5000, seed=3, keep_graph=False)
    assert a.deleted == b.deleted and a.to_dict() == b.to_dict()
    c = run_trial(5000, seed=4, keep_graph=False)
    assert c.deleted != a.deleted


def test_large_trial_is_left_uncertified():
    rep = run_trial(40_000, seed=0)
    assert rep.success and not rep.certified
    assert "not certified" in rep.note
    with pytest.raises(ValueError):
        rep.graph6()


def test_failure_rate_is_low():
    assert failure_rate(10_000, range(20)) <= 0.05


def test_trials_exhausted(monkeypatch):
    real = rd.surviving_degrees

    def starved(p, deleted):
        s, d = real(p, deleted)
        return s, np.zeros_like(d)

    monkeypatch.setattr(rd, "surviving_degrees", starved)
    with pytest.raises(TrialsExhausted) as exc:
        retry_until_witness(3000, max_trials=3, seed=7)
    reps = exc.value.reports
    assert len(reps) == 3 and not any(r.success for r in reps)
    assert [r.params.seed for r in reps] == [7, 8, 9]
    assert all(r.bad_vertices == r.surviving_order for r in reps)


def test_report_text_fields():
    rep = run_trial(3000, seed=1, certify=False)
    text = rep.to_text()
    assert text.splitlines()[0] == "n: 3000"
    assert "certificate: -" in text
