from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from math import inf

import mpmath

ROUTES = ("direct-product", "zeta-accelerated", "closed-combination")


@dataclass(frozen=True)
class ConstantValue:
    """A computed constant together with an estimate of its absolute error.

    ``value`` is an mpmath ``mpf`` carrying more digits than a float.
    """

    value: mpmath.mpf
    error_bound: float
    route: str

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if not (self.error_bound > 0 and self.error_bound < float("inf")):
            raise ValueError(f"error bound must be positive and finite, got {self.error_bound}")

    def __float__(self):
        return float(self.value)

    def digits(self, n: int) -> str:
        """The first n significant digits, truncated rather than rounded.

        A truncated string is always a prefix of the full expansion, so
        asking for more digits never changes the ones already shown.
        """
        if self.value == 0:
            return "0"
        with mpmath.workdps(n + 30):
            d = Decimal(mpmath.nstr(self.value, n + 20, strip_zeros=False, min_fixed=-inf, max_fixed=inf))
        step = Decimal(1).scaleb(d.adjusted() - n + 1)
        return format(d.quantize(step, rounding=ROUND_DOWN), "f")
