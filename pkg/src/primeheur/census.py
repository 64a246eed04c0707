"""Exact counts for each family: the "actual" side of every comparison.

Families made of linear forms a*x + b are counted with a sieve over x: for
every prime q up to the square root of the largest value, the residues of x
that make some form divisible by q are struck out. The big-number families
use strong probable-prime tests.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import gmpy2
import numpy as np

from .families import (
    AP, APAnyDiff, BIGNUM_FAMILIES, Cullen, Cunningham, Factorial, Goldbach, Pair,
    Primorial, Quadratic, Repunit, SophieGermain, Twin, Woodall, linear_forms,
)
from .sieve import (
    DEFAULT_SEGMENT_SIZE, CapacityError, is_prime_table, is_probable_prime,
    mult_order, primes_up_to, small_primes,
)

LINEAR_LIMIT = 10**9
QUADRATIC_LIMIT = 10**12
ANYDIFF_LIMIT = 10**5
BIGNUM_LIMIT = 10**4
GOLDBACH_LIMIT = 10**8

_WHEEL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class CensusResult:
    family: object
    bound: int
    count: int
    elapsed: float = field(compare=False)
    certainty: str

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be >= 0")
        if self.certainty not in ("proven", "probable"):
            raise ValueError(f"bad certainty {self.certainty!r}")


# --- linear forms -------------------------------------------------------

def _strike_residues(q, forms):
    # residues r mod q with a*r + b = 0 (mod q) for some form
    out = set()
    for a, b in forms:
        if a % q:
            out.add(-b * pow(a, -1, q) % q)
        elif b % q == 0:
            # q divides the form at every x; only value q itself survives, and
            # that case lives in the directly checked small range
            return None
    return sorted(out)


def _wheel(forms, primes):
    period = math.prod(primes)
    alive = np.ones(period, dtype=bool)
    for q in primes:
        res = _strike_residues(q, forms)
        if res is None:
            return period, np.zeros(period, dtype=bool)
        for r in res:
            alive[r::q] = False
    return period, alive


def _direct_linear(forms, x_hi):
    # count x in [0, x_hi] with every form prime, by table lookup
    if x_hi < 0:
        return 0
    xs = np.arange(x_hi + 1, dtype=np.int64)
    top = max(a * x_hi + b for a, b in forms)
    if top < 2:
        return 0
    table = is_prime_table(top)
    ok = np.ones(x_hi + 1, dtype=bool)
    for a, b in forms:
        v = a * xs + b
        good = v >= 2
        ok &= good
        ok[good] &= table[v[good]]
    return int(ok.sum())


def count_linear(forms, N, workers=1, segment_size=DEFAULT_SEGMENT_SIZE, progress=None) -> int:
    """Number of x in [0, N] with a*x + b prime for every (a, b) in ``forms``."""
    forms = [(int(a), int(b)) for a, b in forms]
    if any(a < 1 for a, _ in forms):
        raise ValueError("leading coefficients must be positive")
    top = max(a * N + b for a, b in forms)
    if top >= 1 << 63:
        raise CapacityError("form values exceed 64 bits")
    sieve_primes = small_primes(math.isqrt(max(top, 4)))
    q_max = int(sieve_primes[-1])
    # below this every form value could still be a sieving prime or < 2
    x_small = min(N, q_max + max(abs(b) for _, b in forms) + 1)
    total = _direct_linear(forms, x_small)
    if x_small >= N:
        if progress:
            progress(1, 1)
        return total

    wheel_primes = [q for q in _WHEEL_PRIMES if q <= q_max]
    period, pattern = _wheel(forms, wheel_primes)
    plan = []
    for q in sieve_primes.tolist():
        if q in wheel_primes:
            continue
        res = _strike_residues(q, forms)
        if res is None:
            return total
        plan.append((q, res))

    seg = max(1, segment_size // period) * period
    tile = np.tile(pattern, seg // period)
    starts = list(range(0, N + 1, seg))

    def work(lo):
        hi = min(lo + seg, N + 1)
        alive = tile[: hi - lo].copy()
        for q, res in plan:
            for r in res:
                alive[(r - lo) % q :: q] = False
        if lo <= x_small:
            alive[: x_small - lo + 1] = False
        return int(alive.sum())

    done = 0
    if workers <= 1:
        results = map(work, starts)
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
        results = pool.map(work, starts)
    try:
        for c in results:
            total += c
            done += 1
            if progress:
                progress(done, len(starts))
    finally:
        if workers > 1:
            pool.shutdown()
    return total


# --- n^2 + 1 ------------------------------------------------------------

def _sqrt_minus_one(q):
    # q prime, q = 1 mod 4
    for c in range(2, q):
        if pow(c, (q - 1) // 2, q) == q - 1:
            return pow(c, (q - 1) // 4, q)
    raise ValueError(q)


def count_quadratic(N: int) -> int:
    """Number of n >= 1 with n^2 + 1 <= N and n^2 + 1 prime."""
    if N < 2:
        return 0
    m = math.isqrt(N - 1)
    alive = np.ones(m + 1, dtype=bool)
    alive[0] = False
    alive[3::2] = False  # odd n > 1 give an even value
    q_max = math.isqrt(m * m + 1)
    for q in small_primes(q_max).tolist():
        if q % 4 != 1:
            continue
        r = _sqrt_minus_one(q)
        for s in {r, q - r}:
            alive[s::q] = False
            if s * s + 1 == q:
                alive[s] = True
    return int(alive.sum())


# --- Goldbach -----------------------------------------------------------

def goldbach_reps(m: int, convention: str = "unordered") -> int:
    """Number of prime pairs with p + q = m (p <= q when unordered)."""
    if m < 4 or m % 2:
        raise ValueError("m must be even and >= 4")
    if convention not in ("ordered", "unordered"):
        raise ValueError(f"unknown convention {convention!r}")
    if m > GOLDBACH_LIMIT:
        raise CapacityError(f"Goldbach target above {GOLDBACH_LIMIT}")
    table = is_prime_table(m)
    p = primes_up_to(m // 2)
    unordered = int(table[m - p].sum())
    if convention == "unordered":
        return unordered
    return 2 * unordered - int(table[m // 2])


def goldbach_least_primes(limit: int) -> np.ndarray:
    """For every even m in [4, limit], the least prime p with m - p prime.

    Entry i corresponds to m = 2*i; entries for m < 4 and any m without a
    representation are 0.
    """
    table = is_prime_table(limit)
    n = limit // 2 + 1
    least = np.zeros(n, dtype=np.int64)
    m = 2 * np.arange(n, dtype=np.int64)
    todo = np.flatnonzero(m >= 4)
    for p in primes_up_to(limit).tolist():
        if todo.size == 0:
            break
        mm = m[todo]
        hit = (mm - p >= 2) & table[np.maximum(mm - p, 0)]
        least[todo[hit]] = p
        todo = todo[~hit & (mm - p > p)]
    return least


# --- any-difference progressions ----------------------------------------

def count_ap_any_difference(k: int, N: int) -> int:
    """k-term progressions of primes, all terms <= N, any difference d >= 1."""
    if N > ANYDIFF_LIMIT:
        raise CapacityError(f"any-difference progressions limited to N <= {ANYDIFF_LIMIT}")
    if N < 2:
        return 0
    table = is_prime_table(N)
    total = 0
    for p in primes_up_to(N).tolist():
        dmax = (N - p) // (k - 1)
        if dmax < 1:
            break
        d = np.arange(1, dmax + 1, dtype=np.int64)
        ok = np.ones(dmax, dtype=bool)
        for i in range(1, k):
            ok &= table[p + i * d]
        total += int(ok.sum())
    return total


# --- big-number families ------------------------------------------------

def _count_probable(values, workers=1) -> int:
    if workers <= 1:
        return sum(map(is_probable_prime, values))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(is_probable_prime, values))


def cullen_woodall_values(sign: int, N: int):
    return (n * (1 << n) + sign for n in range(1, N + 1))


def primorial_values(sign: int, N: int):
    acc = gmpy2.mpz(1)
    for p in primes_up_to(N).tolist():
        acc *= p
        yield acc + sign


def factorial_values(sign: int, N: int):
    acc = gmpy2.mpz(1)
    for n in range(1, N + 1):
        acc *= n
        yield acc + sign


def repunit_values(a: int, N: int):
    for p in primes_up_to(N).tolist():
        yield (gmpy2.mpz(a) ** p - 1) // (a - 1)


def count_k_factorial(k_max: int = 500, n_max: int = 100, workers: int = 1) -> tuple[int, int]:
    """Primes among k*n! + 1 and k*n! - 1 for 1 <= k <= k_max, 1 <= n <= n_max."""
    plus = minus = 0
    fact = gmpy2.mpz(1)
    for n in range(1, n_max + 1):
        fact *= n
        vals = [k * fact for k in range(1, k_max + 1)]
        plus += _count_probable([v + 1 for v in vals], workers)
        minus += _count_probable([v - 1 for v in vals], workers)
    return plus, minus


# --- dispatch -----------------------------------------------------------

def _check_bound(N, limit, what):
    if N > limit:
        raise CapacityError(f"{what} census limited to N <= {limit}, got {N}")


def count(family, N: int, workers: int = 1, segment_size: int = DEFAULT_SEGMENT_SIZE,
          progress=None) -> CensusResult:
    """Exact count for ``family`` up to N (conventions per family)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    t0 = time.perf_counter()
    certainty = "proven"
    match family:
        case Twin() | Pair() | AP() | SophieGermain() | Cunningham():
            _check_bound(N, LINEAR_LIMIT, "linear-form")
            n = count_linear(linear_forms(family), N, workers, segment_size, progress)
        case Quadratic():
            _check_bound(N, QUADRATIC_LIMIT, "n^2+1")
            n = count_quadratic(N)
        case APAnyDiff(k=k):
            n = count_ap_any_difference(k, N)
        case Goldbach():
            n = goldbach_reps(N)
        case _ if isinstance(family, BIGNUM_FAMILIES):
            _check_bound(N, BIGNUM_LIMIT, "big-number")
            certainty = "probable"
            match family:
                case Cullen():
                    vals = cullen_woodall_values(1, N)
                case Woodall():
                    vals = cullen_woodall_values(-1, N)
                case Primorial(sign=s):
                    vals = primorial_values(s, N)
                case Factorial(sign=s):
                    vals = factorial_values(s, N)
                case Repunit(base=a):
                    vals = repunit_values(a, N)
            n = _count_probable(list(vals), workers)
        case _:
            raise TypeError(f"not a family: {family!r}")
    return CensusResult(family, N, n, time.perf_counter() - t0, certainty)


# --- CRT and factorial divisibility facts --------------------------------

def crt_solution_count(p: int, q: int, a: int, b: int) -> int:
    """Solutions n in [0, L) of n*2^n = a (mod p), n*2^n = b (mod q).

    L = lcm(pq, ord_p(2), ord_q(2)); counted by enumeration.
    """
    if p == q or p % 2 == 0 or q % 2 == 0 or p < 3 or q < 3:
        raise ValueError("p and q must be distinct odd primes")
    op, oq = mult_order(2, p), mult_order(2, q)
    L = math.lcm(p * q, op, oq)
    n = np.arange(L, dtype=np.int64)
    pow_p = np.array([pow(2, i, p) for i in range(op)], dtype=np.int64)
    pow_q = np.array([pow(2, i, q) for i in range(oq)], dtype=np.int64)
    lhs_p = (n % p) * pow_p[n % op] % p
    lhs_q = (n % q) * pow_q[n % oq] % q
    return int(np.count_nonzero((lhs_p == a % p) & (lhs_q == b % q)))


def _prod_mod(lo: int, hi: int, p: int) -> int:
    # product of lo..hi modulo p (p < 3e9 keeps products inside int64)
    if hi < lo:
        return 1 % p
    v = np.arange(lo, hi + 1, dtype=np.int64) % p
    while v.size > 1:
        if v.size % 2:
            v = np.append(v, 1)
        v = v[0::2] * v[1::2] % p
    return int(v[0])


@dataclass(frozen=True)
class FactorialFacts:
    """Which divisibility clauses applied to n and whether each held."""

    n: int
    i_holds: bool
    ii_applies: bool
    ii_holds: bool
    iii_applies: bool
    iii_holds: bool
    iv_cases: int
    iv_holds: bool

    @property
    def ok(self) -> bool:
        return self.i_holds and self.ii_holds and self.iii_holds and self.iv_holds


def _facts_for(n, fact_mod, primes, prime_limit):
    # fact_mod[j] = n! mod primes[j]
    i_holds = (math.factorial(1) - 1) % n == 0 and (math.factorial(0) - 1) % n == 0
    ii_applies = n >= 2 and bool(is_probable_prime(n))
    ii_holds = True
    if ii_applies:
        ii_holds = _prod_mod(1, n - 1, n) == n - 1 and _prod_mod(1, n - 2, n) == 1 % n
    r = 2 * n + 1
    iii_applies = n % 2 == 1 and bool(is_probable_prime(r))
    iii_holds = True
    if iii_applies:
        f = _prod_mod(1, n, r)
        iii_holds = (f == 1) != (f == r - 1)
    hits = fact_mod == primes - 1
    if n > 1:
        # 1! - 1 = 0 is divisible by everything; nothing to check there
        hits |= fact_mod == 1
    iv_ok = True
    cases = 0
    for p in primes[hits].tolist():
        if p > prime_limit:
            break
        cases += 1
        f = _prod_mod(1, p - n - 1, p)
        if (f == 1) == (f == p - 1):
            iv_ok = False
    return FactorialFacts(n, i_holds, ii_applies, ii_holds, iii_applies, iii_holds, cases, iv_ok)


def factorial_divisibility_check(n: int, prime_limit: int = 10**6) -> FactorialFacts:
    """Check the divisibility facts about n! +- 1 for a single n."""
    if not 1 <= n <= 10**4:
        raise ValueError("n must be in 1..10000")
    primes = primes_up_to(prime_limit)
    primes = primes[primes > 2]
    f = np.ones_like(primes)
    for j in range(2, n + 1):
        f = f * j % primes
    return _facts_for(n, f, primes, prime_limit)


def factorial_divisibility_sweep(n_max: int, prime_limit: int = 10**6):
    """:func:`factorial_divisibility_check` for every n in 1..n_max, sharing work."""
    primes = primes_up_to(prime_limit)
    primes = primes[primes > 2]
    f = np.ones_like(primes)
    out = []
    for n in range(1, n_max + 1):
        f = f * n % primes
        out.append(_facts_for(n, f, primes, prime_limit))
    return out
