"""High-precision evaluation of the adjustment constants.

Every product over primes is split at ``small_prime_cutoff``: primes up to
the cutoff are multiplied in directly, and the logarithm of the remaining
tail is expanded as a power series in 1/p. The tail sums of p**-j that
appear there come from the prime zeta function, which in turn is a Moebius
combination of log zeta(m*j). With the default cutoff of 100 the series
converges roughly like (k/100)**j.

All arithmetic runs on mpmath's global context under a module lock, with the
working precision raised well above the target to absorb the cancellation
in P(j) - sum_{p <= cutoff} p**-j.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from mpmath import mpf

from .sieve import mult_order, primes_up_to, primorial, small_primes
from .values import ConstantValue

EULER_GAMMA = "0.5772156649015328606065120900824024310421593359399235988057672348848677"

_LOCK = threading.RLock()


class PrecisionError(ArithmeticError):
    """The requested precision was not reached within the term budget."""


@dataclass(frozen=True)
class PrecisionConfig:
    target_digits: int = 15
    small_prime_cutoff: int = 100
    series_terms: int = 400

    def __post_init__(self):
        if self.target_digits < 6:
            raise ValueError("target_digits must be >= 6")
        if self.small_prime_cutoff < 2:
            raise ValueError("small_prime_cutoff must be >= 2")
        if self.series_terms < 2:
            raise ValueError("series_terms must be >= 2")


DEFAULT = PrecisionConfig()


def _next_prime_after(n: int) -> int:
    return int(small_primes(2 * n + 10)[small_primes(2 * n + 10) > n][0])


def _working_digits(cfg: PrecisionConfig, growth: float) -> int:
    # growth: the series coefficients grow like growth**j
    q1 = _next_prime_after(cfg.small_prime_cutoff)
    ratio = min(growth / q1, 0.9)
    terms = math.ceil((cfg.target_digits + 10) / -math.log10(ratio))
    return cfg.target_digits + 10 + math.ceil(terms * math.log10(max(growth, 2)))


# --- zeta and friends -------------------------------------------------------

_zeta_cache: dict[tuple[str, object], tuple[int, mpf]] = {}


def _hurwitz_em(s, a, dps):
    # sum_{n >= 0} (n + a)**-s by Euler-Maclaurin, real s > 1, 0 < a <= 1.
    # For real s the remainder is bounded by the first omitted correction.
    s = mpf(s)
    a = mpf(a)
    n_head = dps // 2 + 10
    eps = mpf(10) ** (-dps - 3)
    head = mpmath.fsum((n + a) ** -s for n in range(n_head))
    x = n_head + a
    tail = x ** (1 - s) / (s - 1) + x ** -s / 2
    rising = s
    xpow = x ** (-s - 1)
    x2 = x * x
    for j in range(1, 4 * dps + 20):
        term = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * rising * xpow
        tail += term
        if abs(term) < eps * head:
            return head + tail
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        xpow /= x2
    raise PrecisionError(f"Euler-Maclaurin did not converge for s={s}")


def _cached(kind, s, dps, fn):
    key = (kind, s)
    hit = _zeta_cache.get(key)
    if hit is not None and hit[0] >= dps:
        return hit[1]
    value = fn()
    _zeta_cache[key] = (dps, value)
    return value


def _zeta(s, dps):
    return _cached("zeta", s, dps, lambda: _hurwitz_em(s, 1, dps))


def _beta(s, dps):
    # Dirichlet L-function of the non-principal character mod 4
    if s == 1:
        return mpmath.pi / 4
    return _cached(
        "beta", s, dps,
        lambda: (_hurwitz_em(s, mpf(1) / 4, dps) - _hurwitz_em(s, mpf(3) / 4, dps)) / mpf(4) ** s,
    )


def zeta_real(s, cfg: PrecisionConfig = DEFAULT):
    """Riemann zeta at real s >= 1.5, to cfg.target_digits (plus guard digits)."""
    if s < 1.5:
        raise ValueError(f"s={s} is too close to the pole at 1")
    dps = cfg.target_digits + 10
    with _LOCK, mpmath.workdps(dps):
        return +_zeta(s, dps)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def _prime_zeta(s, dps):
    # P(s) = sum_m mu(m)/m log zeta(m s); log zeta(t) ~ 2**-t
    def compute():
        total = mpf(0)
        limit = (dps + 5) * math.log2(10)
        m = 1
        while m * s <= limit + 2:
            mu = mobius(m)
            if mu:
                total += mpf(mu) / m * mpmath.log(_zeta(m * s, dps))
            m += 1
        return total

    return _cached("P", s, dps, compute)


def _prime_zeta_chi(s, dps):
    # sum_p chi4(p) p**-s via sum_m mu(m)/m log L(m s, chi**m)
    def compute():
        total = mpf(0)
        limit = (dps + 5) * math.log(10) / math.log(3)
        m = 1
        while m * s <= limit + 2:
            mu = mobius(m)
            if mu:
                t = m * s
                if m % 2:
                    lval = _beta(t, dps)
                else:
                    lval = _zeta(t, dps) * (1 - mpf(2) ** -t)
                total += mpf(mu) / m * mpmath.log(lval)
            m += 1
        return total

    return _cached("Pchi", s, dps, compute)


def prime_zeta(s, cfg: PrecisionConfig = DEFAULT):
    """Prime zeta function P(s) = sum over primes of p**-s, for real s >= 2."""
    if s < 2:
        raise ValueError("prime_zeta needs s >= 2")
    dps = cfg.target_digits + 10
    with _LOCK, mpmath.workdps(dps):
        return +_prime_zeta(s, dps)


def _prime_tail(j, primes, dps):
    return _prime_zeta(j, dps) - mpmath.fsum(mpf(p) ** -j for p in primes)


# --- Hardy-Littlewood constants ----------------------------------------------

def _exact(value, dps=30, route="closed-combination"):
    bound = max(abs(float(value)), 1.0) * 10.0 ** -dps
    return ConstantValue(mpf(value), bound, route)


def _hl_log(k, cfg, dps):
    """log c_k and an absolute bound on the truncation error."""
    cutoff = cfg.small_prime_cutoff
    if cutoff < k:
        raise ValueError(f"small_prime_cutoff {cutoff} must be >= k={k}")
    primes = small_primes(cutoff).tolist()
    head = mpmath.fsum(mpmath.log(1 - mpf(k) / p) - k * mpmath.log(1 - mpf(1) / p) for p in primes if p > k)
    ratio = mpf(k) / _next_prime_after(cutoff)
    tol = mpf(10) ** -(cfg.target_digits + 5)
    tail = mpf(0)
    for j in range(2, cfg.series_terms + 2):
        term = mpf(k**j - k) / j * _prime_tail(j, primes, dps)
        tail -= term
        if abs(term) < tol:
            err = abs(term) * ratio / (1 - ratio) + mpf(10) ** -(dps - 10)
            return head + tail, err
    raise PrecisionError(f"c_{k} did not converge in {cfg.series_terms} terms")


def hl_ck(k: int, cfg: PrecisionConfig = DEFAULT) -> ConstantValue:
    """c_k = prod_{p > k} (1 - k/p) / (1 - 1/p)**k."""
    if not 1 <= k <= 20:
        raise ValueError("hl_ck supports 1 <= k <= 20")
    if k == 1:
        return _exact(1)
    return _hl_ck_cached(k, cfg)


@lru_cache(maxsize=None)
def _hl_ck_cached(k, cfg):
    dps = _working_digits(cfg, k)
    with _LOCK, mpmath.workdps(dps):
        logc, err = _hl_log(k, cfg, dps)
        value = mpmath.exp(logc)
        bound = float(value * mpmath.expm1(err))
    return ConstantValue(value, bound, "zeta-accelerated")


def twin_constant(cfg: PrecisionConfig = DEFAULT) -> ConstantValue:
    """C_2 = prod_{p > 2} p(p-2)/(p-1)**2."""
    return hl_ck(2, cfg)


def _scaled(base: ConstantValue, factor, route="zeta-accelerated") -> ConstantValue:
    with _LOCK, mpmath.workdps(60):
        value = base.value * factor
        bound = float(abs(mpf(factor)) * base.error_bound) + abs(float(value)) * 1e-40
    if value == 0:
        return _exact(0)
    return ConstantValue(value, bound, route)


def _odd_prime_divisors(n: int) -> list[int]:
    out = []
    while n % 2 == 0 and n:
        n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


def pair_constant(k: int, cfg: PrecisionConfig = DEFAULT) -> ConstantValue:
    """C_{2,k} = C_2 * prod_{p | k, p > 2} (p-1)/(p-2), for pairs {n, n+2k}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    factor = mpmath.fprod(mpf(p - 1) / (p - 2) for p in _odd_prime_divisors(k))
    return _scaled(twin_constant(cfg), factor)


def ap_constant(k: int, d: int, cfg: PrecisionConfig = DEFAULT) -> ConstantValue:
    """A_{k,d} for k-term progressions of primes with common difference d.

    Zero unless k# divides d.
    """
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    if k == 1:
        return _exact(1)
    if d % primorial(k):
        return _exact(0)
    with _LOCK, mpmath.workdps(60):
        factor = mpf(1)
        for p in small_primes(k).tolist():
            factor /= (1 - mpf(1) / p) ** (k - 1)
        for p in _odd_prime_divisors(d):
            if p > k:
                factor *= mpf(p - 1) / (p - k)
    return _scaled(hl_ck(k, cfg), factor)


def grosswald_constant(k: int, cfg: PrecisionConfig = DEFAULT) -> ConstantValue:
    """D_k for progressions of primes with any common difference."""
    if not 3 <= k <= 20:
        raise ValueError("grosswald_constant supports 3 <= k <= 20")
    with _LOCK, mpmath.workdps(60):
        factor = mpmath.fprod(
            (mpf(p) / (p - 1)) ** (k - 1) / p for p in small_primes(k - 1).tolist()
        )
    return _scaled(hl_ck(k - 1, cfg), factor)


def cunningham_constant(k: int, cfg: PrecisionConfig = DEFAULT) -> ConstantValue:
    """B_k for Cunningham chains of length k (either kind).

    Written as 2**(k-1) c_k with corrections at the odd primes below 2**k,
    where min(k, ord_p(2)) can differ from k.
    """
    if not 2 <= k <= 12:
        raise ValueError("cunningham_constant supports 2 <= k <= 12")
    with _LOCK, mpmath.workdps(60):
        factor = mpf(2) ** (k - 1)
        for p in small_primes((1 << k) - 1).tolist():
            if p == 2:
                continue
            w = min(k, mult_order(2, p))
            if p <= k:
                factor *= (1 - mpf(w) / p) / (1 - mpf(1) / p) ** k
            else:
                factor *= mpf(p - w) / (p - k)
    return _scaled(hl_ck(k, cfg), factor)


@lru_cache(maxsize=None)
def quadratic_constant(cfg: PrecisionConfig = DEFAULT) -> ConstantValue:
    """C_+ = prod_{p > 2} (1 - (-1|p)/(p-1)), the constant for primes n^2 + 1.

    For p > cutoff the log of each factor is expanded in p**-j; splitting
    primes by residue mod 4 turns the tail into the ordinary prime zeta
    function plus its twist by the character mod 4.
    """
    dps = _working_digits(cfg, 2)
    cutoff = cfg.small_prime_cutoff
    primes = small_primes(cutoff).tolist()
    odd = [p for p in primes if p > 2]
    chi = {p: (1 if p % 4 == 1 else -1) for p in odd}
    with _LOCK, mpmath.workdps(dps):
        head = mpmath.fsum(mpmath.log(1 - mpf(chi[p]) / (p - 1)) for p in odd)

        def chi_tail(j):
            return _prime_zeta_chi(j, dps) - mpmath.fsum(chi[p] * mpf(p) ** -j for p in odd)

        tail = -chi_tail(1)
        ratio = mpf(2) / _next_prime_after(cutoff)
        tol = mpf(10) ** -(cfg.target_digits + 5)
        for j in range(2, cfg.series_terms + 2):
            half = mpf(2) ** (j - 1)
            term = ((1 - half) * _prime_tail(j, primes, dps) - half * chi_tail(j)) / j
            tail += term
            if abs(term) < tol:
                break
        else:
            raise PrecisionError("C_+ did not converge")
        value = mpmath.exp(head + tail)
        err = abs(term) * ratio / (1 - ratio) + mpf(10) ** -(dps - 10)
        bound = float(value * mpmath.expm1(err))
    return ConstantValue(value, bound, "zeta-accelerated")


def quadratic_constant_direct(cutoff: int = 10**6) -> ConstantValue:
    """C_+ from the plain product over odd primes <= cutoff.

    The factors alternate around 1 with the character, so the running product
    oscillates; the returned value is the geometric mean of the products
    ending at the last two primes. The error estimate, 4 / (sqrt(X) log X)
    relative, assumes square-root cancellation in the character sum beyond X.
    """
    primes = primes_up_to(cutoff)[1:]
    pf = primes.astype(np.float64)
    chi = np.where(primes % 4 == 1, 1.0, -1.0)
    logs = np.log1p(-chi / (pf - 1))
    total = math.fsum(logs.tolist())
    smoothed = total - 0.5 * logs[-1]
    value = math.exp(smoothed)
    err = value * (4.0 / (math.sqrt(cutoff) * math.log(cutoff)))
    return ConstantValue(mpf(value), err, "direct-product")


def euler_gamma():
    """Euler-Mascheroni constant (70 digits, embedded)."""
    with mpmath.workdps(70):
        return mpf(EULER_GAMMA)
