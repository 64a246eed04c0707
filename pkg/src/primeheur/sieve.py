"""Prime generation, counting and primality testing.

Everything here works on plain Python ints (arbitrary precision) or numpy
int64 arrays. The segmented sieve stores odd numbers only; a segment of
``segment_size`` entries therefore spans ``2 * segment_size`` integers.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import gmpy2
import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 20
MIN_SEGMENT_SIZE = 1024
# Base primes up to sqrt(limit) are held in memory; 10**14 keeps that table
# at about 660k entries.
MAX_SIEVE_LIMIT = 10**14

# Deterministic for every n < 3.3e24 (Sorenson & Webster 2015), which covers
# the full unsigned 64-bit range.
MR64_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Extra witnesses beyond MR64_BASES are drawn from this fixed seed.
PROBABLE_PRIME_SEED = 1_000_003
DEFAULT_ROUNDS = 32

_TRIAL_PRIMORIAL = gmpy2.primorial(1000)


class CapacityError(ValueError):
    """Requested range is beyond what this implementation will sieve."""


@dataclass(frozen=True)
class SieveConfig:
    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE

    def __post_init__(self):
        if self.limit < 2:
            raise ValueError(f"limit must be >= 2, got {self.limit}")
        if self.segment_size < MIN_SEGMENT_SIZE:
            raise ValueError(
                f"segment_size must be >= {MIN_SEGMENT_SIZE}, got {self.segment_size}"
            )
        if self.limit > MAX_SIEVE_LIMIT:
            raise CapacityError(f"limit {self.limit} exceeds {MAX_SIEVE_LIMIT}")


@lru_cache(maxsize=16)
def _small_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    out = np.flatnonzero(flags).astype(np.int64)
    out.setflags(write=False)
    return out


def small_primes(n: int) -> np.ndarray:
    """All primes <= n from a plain (unsegmented) sieve. Read-only, cached."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    return _small_sieve(int(n))


def sieve_segment(lo: int, count: int, base_primes: np.ndarray) -> np.ndarray:
    """Primality flags for the odd numbers ``lo, lo+2, ..., lo+2*(count-1)``.

    ``lo`` must be odd and ``base_primes`` must contain every odd prime up to
    the square root of the last entry.
    """
    if lo % 2 == 0:
        raise ValueError("segment start must be odd")
    flags = np.ones(count, dtype=bool)
    hi = lo + 2 * count  # exclusive
    for p in base_primes.tolist():
        if p == 2:
            continue
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        flags[(start - lo) // 2 :: p] = False
    if lo == 1:
        flags[0] = False
    return flags


def _segment_bounds(limit: int, segment_size: int) -> list[tuple[int, int]]:
    # (lo, count) pairs covering the odd numbers 1..limit
    bounds = []
    lo = 1
    while lo <= limit:
        count = min(segment_size, (limit - lo) // 2 + 1)
        bounds.append((lo, count))
        lo += 2 * count
    return bounds


def _run_segments(limit, segment_size, workers, fn):
    base = small_primes(math.isqrt(limit))
    bounds = _segment_bounds(limit, segment_size)
    task = lambda b: fn(b[0], sieve_segment(b[0], b[1], base))  # noqa: E731
    if workers <= 1 or len(bounds) == 1:
        yield from map(task, bounds)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # map() preserves submission order, so output is deterministic
            yield from pool.map(task, bounds)


def prime_segments(
    limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1
) -> Iterator[np.ndarray]:
    """Yield the primes <= limit as consecutive ascending int64 arrays."""
    cfg = SieveConfig(limit, segment_size)
    yield np.array([2], dtype=np.int64)
    if cfg.limit < 3:
        return
    yield from _run_segments(
        cfg.limit,
        cfg.segment_size,
        workers,
        lambda lo, flags: lo + 2 * np.flatnonzero(flags).astype(np.int64),
    )


def primes_up_to(
    limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1
) -> np.ndarray:
    """Return all primes in [2, limit] as an ascending int64 array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(list(prime_segments(limit, segment_size, workers)))


def prime_count(
    limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1
) -> int:
    """pi(limit), the number of primes <= limit."""
    if limit < 2:
        return 0
    if limit < 3:
        return 1
    cfg = SieveConfig(limit, segment_size)
    counts = _run_segments(
        cfg.limit, cfg.segment_size, workers, lambda lo, flags: int(flags.sum())
    )
    return 1 + sum(counts)


def is_prime_table(limit: int) -> np.ndarray:
    """Boolean array ``t`` of length limit+1 with ``t[n]`` true iff n is prime."""
    table = np.zeros(limit + 1, dtype=bool)
    if limit >= 2:
        table[primes_up_to(limit)] = True
    return table


def _strong_probable_prime(n, a) -> bool:
    # n odd > 2, 1 < a < n-1
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = gmpy2.powmod(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = gmpy2.powmod(x, 2, n)
        if x == n - 1:
            return True
    return False


def is_prime64(n: int) -> bool:
    """Exact primality for 0 <= n < 2**64 (strong tests to bases 2..37)."""
    if n < 0 or n >= 1 << 64:
        raise ValueError(f"{n} is outside the 64-bit range")
    if n < 2:
        return False
    for p in MR64_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    return all(_strong_probable_prime(n, a) for a in MR64_BASES)


def witness_schedule(n: int, rounds: int) -> list[int]:
    """The fixed list of strong-test bases used by :func:`is_probable_prime`.

    The first bases are MR64_BASES (in order); any further ones come from a
    ``random.Random(PROBABLE_PRIME_SEED)`` stream, so the schedule depends
    only on ``n`` and ``rounds``.
    """
    bases = list(MR64_BASES[:rounds])
    if rounds > len(bases):
        rng = random.Random(PROBABLE_PRIME_SEED)
        while len(bases) < rounds:
            bases.append(rng.randrange(2, n - 1))
    return bases


def is_probable_prime(n: int, rounds: int = DEFAULT_ROUNDS) -> bool:
    """Strong probable-prime test for arbitrary-size ``n``.

    A ``False`` verdict is a proof of compositeness. A ``True`` verdict has
    error probability at most ``4**-rounds``; it is exact for n < 2**64 once
    ``rounds >= 12``.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 2:
        return False
    if n < 1000:
        return is_prime64(n)
    mz = gmpy2.mpz(n)
    if gmpy2.gcd(mz, _TRIAL_PRIMORIAL) != 1:
        return False
    return all(_strong_probable_prime(mz, a) for a in witness_schedule(n, rounds))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p."""
    if p < 3 or p % 2 == 0 or not is_probable_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def mult_order(a: int, p: int) -> int:
    """Multiplicative order of a modulo the odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"{p} is not an odd prime")
    if a % p == 0:
        raise ValueError(f"{p} divides {a}")
    order = p - 1
    for q in _prime_factors(p - 1):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def primorial(p: int) -> int:
    """Product of all primes <= p (1 for p < 2)."""
    return int(gmpy2.primorial(p)) if p >= 2 else 1


def factorial(n: int) -> int:
    return math.factorial(n)


def chebyshev_theta(x: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> float:
    """theta(x) = sum of log p over primes p <= x.

    Each segment is summed with ``math.fsum`` and the partial sums are again
    combined with ``fsum``, so the only error left is the rounding of the
    individual logarithms.
    """
    if x < 2:
        return 0.0
    partials = [math.fsum(np.log(seg.astype(np.float64))) for seg in prime_segments(x, segment_size)]
    return math.fsum(partials)
