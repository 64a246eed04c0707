"""Predicted counts for each family: density integrals and asymptotic forms.

Integrals are evaluated in the variable u = log x, where every integrand
used here is smooth and slowly varying, with adaptive composite
Gauss-Legendre quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from . import constants as K
from .families import (
    AP, APAnyDiff, Cullen, Cunningham, Factorial, Goldbach, Pair, Primorial,
    Quadratic, Repunit, SophieGermain, Twin, Woodall, family_tuple,
)
from .sieve import primes_up_to
from .tuples import PolyTuple
from .values import ConstantValue

RTOL = 1e-10
MAX_PANELS = 10**6
GL_POINTS = 15
# Meissel-Mertens constant, for sum_{p <= x} 1/p ~ log log x + M
MERTENS = 0.2614972128476427837554268386

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_POINTS)


class QuadratureError(ArithmeticError):
    """Adaptive quadrature could not reach the tolerance within MAX_PANELS."""


class EmptyDomainError(ValueError):
    """No x <= N has every form of the tuple at least 2."""


def _panel_sums(g, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    u = mid[:, None] + half[:, None] * _NODES[None, :]
    return half * (g(u) @ _WEIGHTS)


def integrate(f, a: float, b: float, rtol: float = RTOL, max_panels: int = MAX_PANELS) -> float:
    """Integral of the vectorised function ``f`` over [a, b], 0 < a <= b.

    Panels are bisected until each agrees with its two halves to within its
    share (by width) of ``rtol`` times the running total.
    """
    if b < a:
        raise ValueError("need a <= b")
    if a <= 0:
        raise ValueError("need a > 0")
    if a == b:
        return 0.0
    ua, ub = math.log(a), math.log(b)

    def g(u):
        x = np.exp(u)
        return f(x) * x

    n0 = max(4, math.ceil(2 * (ub - ua)))
    edges = np.linspace(ua, ub, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    coarse = _panel_sums(g, lo, hi)
    width = ub - ua
    accepted = []
    used = n0
    while lo.size:
        mid = 0.5 * (lo + hi)
        left = _panel_sums(g, lo, mid)
        right = _panel_sums(g, mid, hi)
        fine = left + right
        total = abs(sum(accepted) + fine.sum())
        ok = np.abs(fine - coarse) <= rtol * total * (hi - lo) / width
        accepted.append(math.fsum(fine[ok].tolist()))
        bad = ~ok
        used += 2 * int(bad.sum())
        if used > max_panels:
            raise QuadratureError(f"no convergence on [{a}, {b}] within {max_panels} panels")
        lo = np.concatenate([lo[bad], mid[bad]])
        hi = np.concatenate([mid[bad], hi[bad]])
        coarse = np.concatenate([left[bad], right[bad]])
    return math.fsum(accepted)


def log_power_integral(a: float, b: float, k: int) -> float:
    """Integral of dx / (log x)**k from a to b."""
    if a < 2:
        raise ValueError("lower limit must be >= 2")
    if not 1 <= k <= 12:
        raise ValueError("k must be in 1..12")
    if b <= a:
        return 0.0
    return integrate(lambda x: np.log(x) ** -float(k), a, b)


def tuple_start(tup: PolyTuple) -> float:
    """Smallest real x0 >= 2 beyond which every form is at least 2."""
    x0 = 2.0
    for f in tup.polys:
        shifted = np.array(f.coeffs[::-1], dtype=float)
        shifted[-1] -= 2
        real = [r.real for r in np.roots(shifted) if abs(r.imag) < 1e-9]
        if real:
            x0 = max(x0, max(real))
    return x0


def _eval_forms(tup: PolyTuple, x):
    out = np.ones_like(x)
    for f in tup.polys:
        val = np.zeros_like(x)
        for c in reversed(f.coeffs):
            val = val * x + c
        out = out * np.log(val)
    return out


def tuple_integral(tup: PolyTuple, N: float) -> float:
    """Integral of dx / prod log f_i(x) from x0 to N (see :func:`tuple_start`)."""
    x0 = tuple_start(tup)
    if x0 > N:
        raise EmptyDomainError(f"no x <= {N} with every form of {tup} at least 2")
    return integrate(lambda x: 1.0 / _eval_forms(tup, x), x0, N)


@dataclass(frozen=True)
class PredictionResult:
    integral_estimate: float
    ratio_estimate: float
    constant_used: ConstantValue
    family: object
    bound: int

    def __post_init__(self):
        for v in (self.integral_estimate, self.ratio_estimate):
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"prediction must be finite and >= 0, got {v}")


def _gamma_exp() -> ConstantValue:
    with mpmath.workdps(40):
        return ConstantValue(mpmath.exp(K.euler_gamma()), 1e-35, "closed-combination")


def _two() -> ConstantValue:
    return ConstantValue(mpmath.mpf(2), 1e-30, "closed-combination")


def goldbach_prediction(m: int, shah_wilson: bool = False, convention: str = "unordered") -> float:
    """Expected number of ways to write the even number m as p + q.

    The plain form is 2 C_{2,m/2} times the integral of
    dx / (log x log(m - x)) over [2, m - 2], which counts ordered pairs.
    The integrand is symmetric about m/2, so only the lower half is
    integrated; near m - 2 it is too steep in log x for the quadrature.
    With ``shah_wilson`` the asymptotic m / (log^2 m - log m) replaces the
    integral. The unordered convention halves either value.
    """
    if m < 6 or m % 2:
        raise ValueError("m must be even and >= 6")
    if convention not in ("ordered", "unordered"):
        raise ValueError(f"unknown convention {convention!r}")
    c = 2 * float(K.pair_constant(m // 2).value)
    if shah_wilson:
        lm = math.log(m)
        value = c * m / (lm * lm - lm)
    else:
        half = integrate(lambda x: 1.0 / (np.log(x) * np.log(m - x)), 2, m / 2)
        value = 2 * c * half
    return value / 2 if convention == "unordered" else value


def _discrete_sum(weights) -> float:
    return math.fsum(np.asarray(weights, dtype=float).tolist())


def predict(family, N: int) -> PredictionResult:
    """Integral and asymptotic-ratio predictions for ``family`` up to N."""
    if N < 10:
        raise ValueError("N must be >= 10")
    logN = math.log(N)
    match family:
        case Twin():
            c = K.twin_constant()
            cf = 2 * float(c.value)
            integral = cf * log_power_integral(2, N, 2)
            ratio = cf * N / logN**2
        case Pair(gap=g):
            c = K.pair_constant(g)
            cf = 2 * float(c.value)
            integral = cf * integrate(lambda x: 1.0 / (np.log(x) * np.log(x + g)), 2, N)
            ratio = cf * N / logN**2
        case AP(k=k, d=d):
            c = K.ap_constant(k, d)
            cf = float(c.value)
            # the per-term logs log(x + i*d) matter a lot for large d
            integral = cf * tuple_integral(family_tuple(family), N) if cf else 0.0
            ratio = cf * N / logN**k
        case APAnyDiff(k=k):
            c = K.grosswald_constant(k)
            integral = ratio = float(c.value) * N * N / (2 * (k - 1) * logN**k)
        case SophieGermain():
            c = K.twin_constant()
            cf = 2 * float(c.value)
            integral = cf * tuple_integral(family_tuple(family), N)
            ratio = cf * N / logN**2
        case Cunningham(k=k):
            c = K.cunningham_constant(k)
            cf = float(c.value)
            shifts = [i * math.log(2) for i in range(k)]

            def dens(x):
                lx = np.log(x)
                out = np.ones_like(x)
                for s in shifts:
                    out = out * (lx + s)
                return 1.0 / out

            integral = cf * integrate(dens, 2, N)
            ratio = cf * N / logN**k
        case Quadratic():
            c = K.quadratic_constant()
            cf = float(c.value)
            integral = cf / 2 * log_power_integral(2, math.sqrt(N), 1)
            ratio = cf * math.sqrt(N) / logN
        case Goldbach():
            if N % 2:
                raise ValueError("Goldbach target must be even")
            c = K.pair_constant(N // 2)
            integral = goldbach_prediction(N)
            ratio = float(c.value) * N / logN**2
        case Cullen() | Woodall():
            c = _two()
            ln2 = math.log(2)
            integral = 2 * integrate(lambda x: 1.0 / (np.log(x) + x * ln2), 2, N)
            ratio = 2 * (logN - ln2) / ln2
        case Primorial():
            c = _gamma_exp()
            eg = float(c.value)
            p = primes_up_to(N).astype(float)
            integral = eg * _discrete_sum(np.log(p) / p)
            ratio = eg * logN
        case Factorial():
            c = _gamma_exp()
            eg = float(c.value)
            n = np.arange(1, N + 1, dtype=float)
            integral = eg * _discrete_sum((1 - 1 / (4 * np.log(2 * n))) / n)
            ratio = eg * logN
        case Repunit(base=a):
            c = _gamma_exp()
            eg = float(c.value)
            p = primes_up_to(N).astype(float)
            integral = eg * _discrete_sum(1 / p) / math.log(a)
            ratio = eg * (math.log(logN) + MERTENS) / math.log(a)
        case _:
            raise TypeError(f"not a family: {family!r}")
    return PredictionResult(float(integral), float(ratio), c, family, N)
