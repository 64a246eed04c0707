"""Integer polynomial tuples, w(p), admissibility and the direct Euler product."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .sieve import primes_up_to, small_primes
from .values import ConstantValue

MAX_DEGREE = 8


class NonAdmissibleError(ValueError):
    """Some prime divides the product of the forms for every x."""


@dataclass(frozen=True)
class Polynomial:
    """Dense integer polynomial, constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if any(not isinstance(c, (int, np.integer)) or isinstance(c, bool) for c in coeffs):
            raise TypeError("coefficients must be integers")
        coeffs = tuple(int(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if coeffs[-1] <= 0:
            raise ValueError("leading coefficient must be positive")
        if len(coeffs) - 1 > MAX_DEGREE:
            raise ValueError(f"degree above {MAX_DEGREE} is not supported")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
            sign = "-" if c < 0 else "+"
            terms.append(body if not terms and sign == "+" else f"{sign}{body}")
        return "".join(terms)


@dataclass(frozen=True)
class PolyTuple:
    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if not self.polys:
            raise ValueError("tuple needs at least one polynomial")

    @classmethod
    def linear(cls, forms) -> PolyTuple:
        """Build from (a, b) pairs meaning a*x + b."""
        return cls(tuple(Polynomial((b, a)) for a, b in forms))

    @property
    def k(self) -> int:
        return len(self.polys)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.polys)

    @property
    def degree_product(self) -> int:
        return math.prod(self.degrees)

    @cached_property
    def is_linear(self) -> bool:
        return all(f.degree == 1 for f in self.polys)

    def __str__(self):
        return ",".join(str(f) for f in self.polys)


_TERM = re.compile(r"^(\d+)?(?:\*?x(?:(?:\^|\*\*)(\d+))?)?$")


def parse_polynomial(text: str) -> Polynomial:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        m = _TERM.match(body)
        if not body or m is None:
            raise ValueError(f"bad term {term!r} in {text!r}")
        has_x = "x" in body
        coef = int(m.group(1)) if m.group(1) else 1
        if not has_x and not m.group(1):
            raise ValueError(f"bad term {term!r} in {text!r}")
        power = (int(m.group(2)) if m.group(2) else 1) if has_x else 0
        coeffs[power] = coeffs.get(power, 0) + sign * coef
    deg = max(coeffs)
    return Polynomial(tuple(coeffs.get(i, 0) for i in range(deg + 1)))


def parse_tuple(text: str) -> PolyTuple:
    """Parse ``"x,x+2"`` or ``"x^2+1"`` style tuple literals."""
    return PolyTuple(tuple(parse_polynomial(part) for part in text.split(",")))


def w_count(tup: PolyTuple, p: int) -> int:
    """Number of x in 0..p-1 with f1(x)*...*fk(x) = 0 mod p, by evaluation."""
    if p < 2:
        raise ValueError("p must be prime")
    if p < 1 << 31:
        xs = np.arange(p, dtype=np.int64)
        hit = np.zeros(p, dtype=bool)
        for f in tup.polys:
            acc = np.zeros(p, dtype=np.int64)
            for c in reversed(f.coeffs):
                acc = (acc * xs + c % p) % p
            hit |= acc == 0
        return int(hit.sum())
    return sum(1 for x in range(p) if any(f(x) % p == 0 for f in tup.polys))


# --- root counting over GF(p) -------------------------------------------

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, g, p):
    # remainder of f by g, coefficients constant-first
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        if c:
            for i, gc in enumerate(g):
                f[shift + i] = (f[shift + i] - c * gc) % p
        f.pop()
        _trim(f)
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _pmulmod(f, g, m, p):
    return _pmod(_pmul(f, g, p), m, p)


def _x_pow_mod(e, m, p):
    result = [1]
    base = _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(f, g, p):
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _count_distinct_roots(f, p):
    # f constant-first, reduced mod p and nonzero
    if len(f) == 1:
        return 0
    h = _x_pow_mod(p, f, p)
    h = h + [0] * max(0, 2 - len(h))
    h[1] = (h[1] - 1) % p
    return len(_pgcd(f, _trim(h), p)) - 1


def root_count(tup: PolyTuple, p: int) -> int:
    """Same value as :func:`w_count`, computed without enumerating residues.

    Linear forms contribute their single root directly; higher-degree forms
    are combined and their distinct roots counted as deg gcd(F, x^p - x).
    """
    roots = set()
    nonlinear = [1]
    for f in tup.polys:
        red = _trim([c % p for c in f.coeffs])
        if not red:
            return p
        if len(red) == 2:
            roots.add(-red[0] * pow(red[1], -1, p) % p)
        elif len(red) > 2:
            nonlinear = _pmul(nonlinear, red, p)
    if len(nonlinear) == 1:
        return len(roots)
    if p <= 64:
        return w_count(tup, p)
    if len(nonlinear) == 3:
        c, b, a = nonlinear
        disc = (b * b - 4 * a * c) % p
        n = 1 if disc == 0 else (2 if pow(disc, (p - 1) // 2, p) == 1 else 0)
    else:
        n = _count_distinct_roots(nonlinear, p)
    shared = sum(1 for r in roots if _peval(nonlinear, r, p) == 0)
    return len(roots) + n - shared


def _peval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _linear_root_counts(tup: PolyTuple, primes: np.ndarray) -> np.ndarray:
    # distinct roots of b*x + a for each prime
    forms = [(f.coeffs[0], f.coeffs[1]) for f in tup.polys]
    out = np.empty(len(primes), dtype=np.int64)
    for i, p in enumerate(primes.tolist()):
        roots = set()
        inv = {}
        for a, b in forms:
            bm = b % p
            if bm == 0:
                if a % p == 0:
                    roots = None
                    break
                continue
            if bm == 1:
                roots.add(-a % p)
            else:
                if bm not in inv:
                    inv[bm] = pow(bm, -1, p)
                roots.add(-a * inv[bm] % p)
        out[i] = p if roots is None else len(roots)
    return out


def w_values(tup: PolyTuple, primes) -> np.ndarray:
    """w(p) for each prime in ``primes`` using the fast root counter."""
    primes = np.asarray(primes, dtype=np.int64)
    if tup.is_linear:
        return _linear_root_counts(tup, primes)
    return np.array([root_count(tup, p) for p in primes.tolist()], dtype=np.int64)


def _content(f: Polynomial) -> int:
    return math.gcd(*f.coeffs)


def is_admissible(tup: PolyTuple, bound: int | None = None) -> bool:
    """True iff w(p) < p for every prime p <= bound.

    The default bound is max(k, largest |coefficient|, total degree); the
    last term only matters for nonlinear tuples such as x^2 + x. A prime p
    larger than the total degree can only have w(p) = p when it divides
    every coefficient of one form, so only smaller primes need the full count.
    """
    total_degree = sum(tup.degrees)
    if bound is None:
        bound = max(tup.k, total_degree, max(abs(c) for f in tup.polys for c in f.coeffs))
    for f in tup.polys:
        c = _content(f)
        if any(c % q == 0 for q in small_primes(min(bound, c)).tolist()):
            return False
    primes = small_primes(min(bound, total_degree))
    if len(primes) == 0:
        return True
    w = w_values(tup, primes)
    return bool(np.all(w < primes))


def adjustment_product_direct(tup: PolyTuple, prime_cutoff: int) -> ConstantValue:
    """Truncated Euler product of (1 - w(p)/p) / (1 - 1/p)^k over p <= cutoff.

    This is the slow reference route. The error estimate assumes the
    first-order terms w(p) - k average out beyond the cutoff, which holds for
    the tuples handled here.
    """
    import mpmath

    primes = primes_up_to(prime_cutoff)
    w = w_values(tup, primes)
    if np.any(w >= primes):
        bad = int(primes[np.argmax(w >= primes)])
        raise NonAdmissibleError(f"{tup} is divisible by {bad} for every x")
    pf = primes.astype(np.float64)
    logs = np.log1p(-w / pf) - tup.k * np.log1p(-1.0 / pf)
    log_value = math.fsum(logs.tolist())
    x = float(prime_cutoff)
    k = tup.k
    tail = (k * k + sum(d * d for d in tup.degrees)) / (x * math.log(x))
    if not tup.is_linear:
        # character-like first-order terms only cancel on average
        tail += sum(tup.degrees) / math.sqrt(x)
    value = math.exp(log_value)
    err = value * math.expm1(tail) + value * 1e-13
    return ConstantValue(mpmath.mpf(value), err, "direct-product")
