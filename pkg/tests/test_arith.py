import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeta_idd import arith
from zeta_idd.errors import CapacityError, DomainError

from oracles import naive_von_mangoldt

# sum_{n <= 1e6} Lambda(n) from a plain boolean sieve (oracles.chebyshev_psi_bruteforce)
PSI_1E6 = 999586.597495633
# t = 2: prime powers 2, 3, 4, 5, 7 enumerated directly at 40 digits
PRIME_SUM_T2 = 1.7458508391553804


def test_limit_one_is_empty():
    assert arith.sieve_von_mangoldt(1).entries() == []


def test_limit_ten():
    logs = {2: math.log(2), 3: math.log(3), 4: math.log(2), 5: math.log(5),
            7: math.log(7), 8: math.log(2), 9: math.log(3)}
    assert arith.sieve_von_mangoldt(10).entries() == sorted(logs.items())


def test_matches_trial_division_to_1e4():
    table = arith.sieve_von_mangoldt(10_000)
    expected = [(n, naive_von_mangoldt(n)) for n in range(2, 10_001) if naive_von_mangoldt(n) > 0]
    assert table.entries() == expected


@pytest.mark.parametrize("limit", [2, 3, 4, 97, 1 << 22, (1 << 22) + 3])
def test_segment_edges(limit):
    # segment boundaries must neither drop nor duplicate primes
    table = arith.sieve_von_mangoldt(limit)
    assert np.all(np.diff(table.n) > 0)
    assert table.n[-1] <= limit
    if limit < 10_000:
        assert table.entries() == [(n, naive_von_mangoldt(n)) for n in range(2, limit + 1)
                                   if naive_von_mangoldt(n) > 0]


def test_chebyshev_psi_million():
    table = arith.sieve_von_mangoldt(10**6)
    psi = arith.chebyshev_psi(1e6, table)
    assert psi == pytest.approx(PSI_1E6, abs=1e-6)
    assert abs(psi - 1e6) / 1e6 < 0.003


def test_guards():
    with pytest.raises(CapacityError):
        arith.sieve_von_mangoldt(10**9 + 1)
    with pytest.raises(DomainError):
        arith.sieve_von_mangoldt(0)


def test_prime_term_sum_examples():
    table = arith.sieve_von_mangoldt(100)
    assert arith.prime_term_sum(0.5, table) == 0.0
    assert arith.prime_term_sum(math.log(2), table) == 0.0
    assert arith.prime_term_sum(2.0, table) == pytest.approx(PRIME_SUM_T2, abs=1e-15)


def test_prime_term_sum_capacity():
    table = arith.sieve_von_mangoldt(100)
    with pytest.raises(CapacityError):
        arith.prime_term_sum(5.0, table)
    with pytest.raises(DomainError):
        arith.prime_term_sum(-1.0, table)


def test_boundary_is_continuous():
    table = arith.sieve_von_mangoldt(10_000)
    for n in [2, 3, 4, 5, 7, 8, 9, 11, 1024, 9973]:
        eps = 1e-9
        a = arith.prime_term_sum(math.log(n) - eps, table)
        b = arith.prime_term_sum(math.log(n) + eps, table)
        # slope of the sum just above log n
        slope = float(table.weights()[table.n <= n].sum())
        assert abs(b - a) <= 2 * slope * eps + 1e-12


@given(st.floats(0.0, 9.0), st.floats(0.0, 9.0))
@settings(max_examples=200, deadline=None)
def test_prime_term_sum_monotone(t1, t2):
    table = arith.table_for_t(9.0)
    lo, hi = sorted((t1, t2))
    a = arith.prime_term_sum(lo, table)
    assert a >= 0.0
    assert arith.prime_term_sum(hi, table) >= a


def test_array_matches_scalar():
    table = arith.table_for_t(12.0)
    ts = np.linspace(0, 12, 241)
    arr = arith.prime_term_sum_array(ts, table)
    scal = np.array([arith.prime_term_sum(t, table) for t in ts])
    p1, _ = table.prefix_sums()
    assert np.all(np.abs(arr - scal) <= 64 * np.finfo(float).eps * ts * p1[-1] + 1e-15)
