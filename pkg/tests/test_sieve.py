import math
import random

import gmpy2
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primeheur.sieve import (
    MAX_SIEVE_LIMIT, CapacityError, SieveConfig, chebyshev_theta, factorial, is_prime64,
    is_prime_table, is_probable_prime, legendre, mult_order, prime_count, primes_up_to,
    primorial, witness_schedule,
)


def trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@pytest.fixture(scope="module")
def trial_primes_1e5():
    return [n for n in range(2, 10**5 + 1) if trial_division(n)]


def test_primes_up_to_examples():
    assert primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert primes_up_to(2).tolist() == [2]
    assert primes_up_to(1).tolist() == []
    assert len(primes_up_to(10**6)) == 78498


def test_primes_match_trial_division(trial_primes_1e5):
    assert primes_up_to(10**5).tolist() == trial_primes_1e5


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 10**5))
def test_primes_prefix_matches_trial_division(n, trial_primes_1e5):
    expect = [p for p in trial_primes_1e5 if p <= n]
    assert primes_up_to(n).tolist() == expect


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**7))
def test_prime_count_equals_stream_length(n):
    assert prime_count(n) == len(primes_up_to(n))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3 * 10**5), st.integers(1024, 1 << 15), st.integers(1, 4))
def test_segment_size_and_workers_do_not_matter(n, seg, workers):
    base = primes_up_to(n)
    assert np.array_equal(primes_up_to(n, segment_size=seg, workers=workers), base)
    assert prime_count(n, segment_size=seg, workers=workers) == len(base)


def test_prime_count_examples():
    assert prime_count(1) == 0
    assert prime_count(100) == 25
    assert prime_count(48098) < 4954


def test_sieve_config_validation():
    with pytest.raises(ValueError):
        SieveConfig(1)
    with pytest.raises(ValueError):
        SieveConfig(100, segment_size=512)
    with pytest.raises(CapacityError):
        SieveConfig(MAX_SIEVE_LIMIT + 1)
    with pytest.raises(CapacityError):
        primes_up_to(MAX_SIEVE_LIMIT + 1)


def test_is_prime_table():
    t = is_prime_table(30)
    assert np.flatnonzero(t).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_is_prime64_examples():
    assert not is_prime64(0)
    assert not is_prime64(1)
    assert is_prime64(2)
    assert is_prime64(2**61 - 1)
    assert is_prime64(10**9 + 7)
    assert is_prime64(2**64 - 59)  # largest 64-bit prime
    assert not is_prime64(2**64 - 1)
    with pytest.raises(ValueError):
        is_prime64(2**64)


def test_is_prime64_on_all_primes_below_1e6():
    assert all(is_prime64(p) for p in primes_up_to(10**6).tolist())


def test_is_prime64_rejects_random_composites():
    rng = random.Random(7)
    for _ in range(10**4):
        a = rng.randrange(3, 2**32)
        b = rng.randrange(3, 2**32)
        assert not is_prime64(a * b)


def test_is_prime64_strong_pseudoprimes():
    # strong pseudoprimes to several small bases, and Carmichael numbers
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
              341550071728321, 3825123056546413051, 561, 41041, 825265):
        assert not is_prime64(n)


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_is_prime64_agrees_with_gmpy2(n):
    assert is_prime64(n) == bool(gmpy2.is_prime(n, 50))


def test_is_probable_prime_examples():
    assert is_probable_prime(211)
    assert not is_probable_prime(209)
    assert is_probable_prime(39916801)
    assert is_probable_prime(2**127 - 1)
    assert is_probable_prime(2**521 - 1)
    assert not is_probable_prime(2**128 + 1)
    assert not is_probable_prime((2**89 - 1) * (2**107 - 1))
    with pytest.raises(ValueError):
        is_probable_prime(7, rounds=0)


def test_witness_schedule_is_fixed():
    n = 2**200 + 235
    a = witness_schedule(n, 40)
    assert a == witness_schedule(n, 40)
    assert a[:12] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert all(2 <= w < n - 1 for w in a)


def test_legendre_examples():
    assert legendre(-1, 5) == 1
    assert legendre(-1, 3) == -1
    assert legendre(-1, 13) == 1
    assert legendre(10, 5) == 0
    for bad in (2, 9, 1):
        with pytest.raises(ValueError):
            legendre(-1, bad)


def test_legendre_minus_one_rule():
    for p in primes_up_to(10**4)[1:].tolist():
        assert (legendre(-1, p) == 1) == (p % 4 == 1)


def test_legendre_matches_euler_squares():
    for p in (3, 7, 11, 13, 101):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)


def test_mult_order_examples():
    assert mult_order(2, 7) == 3
    assert mult_order(2, 3) == 2
    assert mult_order(2, 11) == 10
    with pytest.raises(ValueError):
        mult_order(14, 7)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(primes_up_to(5000)[1:].tolist()), st.integers(1, 10**6))
def test_mult_order_properties(p, a):
    if a % p == 0:
        return
    e = mult_order(a, p)
    assert (p - 1) % e == 0
    assert pow(a, e, p) == 1
    assert all(pow(a, d, p) != 1 for d in range(1, e) if e % d == 0)


def test_primorial_and_factorial():
    assert primorial(7) == 210
    assert primorial(1) == 1
    assert primorial(10) == 210
    assert factorial(6) == 720
    assert factorial(0) == 1


def test_chebyshev_theta_examples():
    assert chebyshev_theta(10) == pytest.approx(math.log(210), rel=1e-15)
    assert chebyshev_theta(2) == pytest.approx(math.log(2), rel=1e-15)


def test_chebyshev_theta_segmentation_invariant():
    a = chebyshev_theta(10**6)
    b = chebyshev_theta(10**6, segment_size=4096)
    assert abs(a - b) <= 1e-9
    assert a == pytest.approx(math.fsum(math.log(p) for p in primes_up_to(10**6).tolist()), abs=1e-8)


def test_dusart_bound_at_1e8():
    x = 10**8
    assert abs(chebyshev_theta(x) - x) <= 0.006788 * x / math.log(x)
