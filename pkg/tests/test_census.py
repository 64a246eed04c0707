import math
import random

import gmpy2
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primeheur import golden
from primeheur.census import (
    BIGNUM_LIMIT, CensusResult, count, count_ap_any_difference, count_linear, count_quadratic,
    crt_solution_count, factorial_divisibility_check, factorial_divisibility_sweep,
    goldbach_least_primes, goldbach_reps,
)
from primeheur.families import (
    AP, APAnyDiff, Cullen, Cunningham, Factorial, Goldbach, Pair, Primorial, Quadratic,
    Repunit, SophieGermain, Twin, Woodall, linear_forms,
)
from primeheur.sieve import CapacityError, is_prime_table, mult_order, primes_up_to


def isprime(n):
    return n >= 2 and bool(gmpy2.is_prime(n, 30))


def trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def chain_count(kind, k, N):
    step = 1 if kind == "first" else -1
    total = 0
    for p in primes_up_to(N).tolist():
        q, ok = p, True
        for _ in range(k - 1):
            q = 2 * q + step
            if not isprime(q):
                ok = False
                break
        total += ok
    return total


@pytest.mark.parametrize("family, N, expect", [
    (Twin(), 10**3, 35),
    (Pair(6), 10**6, 16386),
    (SophieGermain(), 10**6, 7746),
    (Quadratic(), 10**6, 112),
    (Woodall(), 10**3, 15),
    (Cullen(), 10**3, 2),
    (Primorial(-1), 10**2, 6),
    (Primorial(1), 10**2, 6),
    (Factorial(1), 10**2, 9),
    (Factorial(-1), 10**2, 11),
])
def test_count_examples(family, N, expect):
    r = count(family, N)
    assert isinstance(r, CensusResult)
    assert r.count == expect
    assert r.bound == N and r.family == family
    assert r.elapsed >= 0


def test_certainty_labels():
    assert count(Twin(), 1000).certainty == "proven"
    assert count(Quadratic(), 1000).certainty == "proven"
    for fam in (Cullen(), Woodall(), Primorial(1), Factorial(-1), Repunit(10)):
        assert count(fam, 50).certainty == "probable"


def test_twin_matches_trial_division_to_1e5():
    flags = [trial_division(n) for n in range(10**5 + 3)]
    brute = sum(1 for p in range(2, 10**5 + 1) if flags[p] and flags[p + 2])
    assert count(Twin(), 10**5).count == brute


@settings(max_examples=60, deadline=None)
@given(N=st.integers(1, 3 * 10**4))
def test_twin_prefix_counts(N):
    table = is_prime_table(N + 2)
    brute = sum(1 for p in range(2, N + 1) if table[p] and table[p + 2])
    assert count(Twin(), N).count == brute


@pytest.mark.parametrize("N", [10**4, 10**6])
def test_sophie_germain_equals_cunningham_two(N):
    assert count(SophieGermain(), N).count == count(Cunningham("first", 2), N).count


def test_pair_scaling():
    ratio = count(Pair(6), 10**6).count / count(Twin(), 10**6).count
    assert 1.9 <= ratio <= 2.1


@pytest.mark.parametrize("kind", ["first", "second"])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_cunningham_against_chain_oracle(kind, k):
    assert count(Cunningham(kind, k), 10**5).count == chain_count(kind, k, 10**5)


@pytest.mark.parametrize("k, d", [(3, 6), (4, 30), (5, 30), (2, 2), (3, 4)])
def test_ap_against_brute_force(k, d):
    N = 2 * 10**5
    brute = sum(1 for p in primes_up_to(N).tolist() if all(isprime(p + i * d) for i in range(k)))
    assert count(AP(k, d), N).count == brute


@settings(max_examples=30, deadline=None)
@given(forms=st.lists(st.tuples(st.integers(1, 6), st.integers(-20, 20)), min_size=1, max_size=3),
       N=st.integers(1, 5000))
def test_count_linear_against_direct_scan(forms, N):
    brute = sum(1 for x in range(N + 1) if all(isprime(b * x + a) for b, a in forms))
    assert count_linear(forms, N) == brute


def test_quadratic_counts():
    assert count_quadratic(10**8) == golden.QUADRATIC[10**8][0]
    assert count_quadratic(10**10) == golden.QUADRATIC[10**10][0]
    brute = sum(1 for n in range(1, 1001) if n * n + 1 <= 10**6 and isprime(n * n + 1))
    assert count_quadratic(10**6) == brute
    assert count_quadratic(1) == 0
    assert count_quadratic(2) == 1


def test_ap_any_difference_against_double_loop():
    for k, N in ((3, 100), (3, 1000), (4, 1000), (5, 2000)):
        brute = 0
        for p in range(2, N + 1):
            if not trial_division(p):
                continue
            for d in range(1, (N - p) // (k - 1) + 1):
                brute += all(trial_division(p + i * d) for i in range(1, k))
        assert count(APAnyDiff(k), N).count == brute
    with pytest.raises(CapacityError):
        count_ap_any_difference(3, 10**6)


def test_goldbach_reps_examples():
    assert goldbach_reps(10, "unordered") == 2
    assert goldbach_reps(4, "unordered") == 1
    assert goldbach_reps(10, "ordered") == 3
    assert count(Goldbach(), 100).count == 6
    with pytest.raises(ValueError):
        goldbach_reps(11)


@settings(max_examples=80, deadline=None)
@given(half=st.integers(2, 5000))
def test_goldbach_reps_brute(half):
    m = 2 * half
    pairs = [(p, m - p) for p in range(2, m - 1) if trial_division(p) and trial_division(m - p)]
    assert goldbach_reps(m, "ordered") == len(pairs)
    assert goldbach_reps(m, "unordered") == sum(1 for p, q in pairs if p <= q)


def test_goldbach_nonvanishing_to_1e6():
    least = goldbach_least_primes(10**6)
    evens = least[2:]  # m = 4, 6, ..., 10**6
    assert (evens > 0).all()
    table = is_prime_table(10**6)
    m = 2 * np.arange(2, 2 + evens.size)
    assert table[evens].all() and table[m - evens].all()


def test_goldbach_least_primes_small():
    least = goldbach_least_primes(2000)
    for m in range(4, 2001, 2):
        expect = next(p for p in range(2, m) if trial_division(p) and trial_division(m - p))
        assert least[m // 2] == expect


def test_repunit_counts():
    # base 10: R2, R19, R23; base 2: Mersenne exponents below 100
    assert count(Repunit(10), 100).count == 3
    assert count(Repunit(2), 100).count == 10


def test_capacity_errors():
    with pytest.raises(CapacityError):
        count(Twin(), 10**9 + 1)
    with pytest.raises(CapacityError):
        count(Factorial(1), BIGNUM_LIMIT + 1)
    with pytest.raises(CapacityError):
        count(Quadratic(), 10**12 + 1)
    with pytest.raises(ValueError):
        count(Twin(), 0)


@pytest.mark.parametrize("family", [Twin(), Pair(30), AP(4, 30), Cunningham("second", 3)])
def test_census_ignores_partitioning(family):
    N = 3 * 10**6 + 17
    base = count(family, N).count
    for workers, seg in ((2, 1 << 15), (4, 1 << 17), (8, 100_003)):
        assert count(family, N, workers=workers, segment_size=seg).count == base


def test_progress_callback_reaches_total():
    seen = []
    count(Twin(), 10**6, segment_size=1 << 16, progress=lambda done, total: seen.append((done, total)))
    assert seen and seen[-1][0] == seen[-1][1]
    assert [d for d, _ in seen] == sorted(d for d, _ in seen)


def test_linear_forms():
    assert linear_forms(Twin()) == [(1, 0), (1, 2)]
    assert linear_forms(Cunningham("first", 3)) == [(1, 0), (2, 1), (4, 3)]


def test_crt_examples():
    assert crt_solution_count(3, 5, 1, 1) == 4
    assert crt_solution_count(3, 7, 0, 0) == 2
    with pytest.raises(ValueError):
        crt_solution_count(5, 5, 1, 1)
    with pytest.raises(ValueError):
        crt_solution_count(2, 5, 1, 1)


def test_crt_closed_form_on_random_draws():
    rng = random.Random(11)
    odd = primes_up_to(61)[1:].tolist()
    for _ in range(50):
        p, q = rng.sample(odd, 2)
        a, b = rng.randrange(p), rng.randrange(q)
        L = math.lcm(p * q, mult_order(2, p), mult_order(2, q))
        assert crt_solution_count(p, q, a, b) == L // (p * q)


def test_factorial_check_examples():
    f5 = factorial_divisibility_check(5)
    assert f5.ii_applies and f5.ii_holds
    f3 = factorial_divisibility_check(3)
    assert f3.iii_applies and f3.iii_holds
    assert f3.ok and f5.ok
    assert factorial_divisibility_check(1).ok
    with pytest.raises(ValueError):
        factorial_divisibility_check(10**4 + 1)


def test_factorial_check_random_sample():
    rng = random.Random(3)
    for n in rng.sample(range(1, 3000), 8):
        facts = factorial_divisibility_check(n, prime_limit=10**5)
        assert facts.ok


def test_factorial_sweep_to_2000():
    facts = factorial_divisibility_sweep(2000)
    assert len(facts) == 2000
    assert all(f.ok for f in facts)
    assert sum(f.iv_cases for f in facts) > 0
    assert facts[4] == factorial_divisibility_check(5)
