"""The prime families that can be predicted and counted.

Each family is a small frozen dataclass; ``Family`` is their union. The
polynomial families can be turned into a :class:`~primeheur.tuples.PolyTuple`
with :func:`family_tuple`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .tuples import PolyTuple, parse_tuple


@dataclass(frozen=True)
class Twin:
    pass


@dataclass(frozen=True)
class Pair:
    """Prime pairs {p, p + gap}."""

    gap: int

    def __post_init__(self):
        if self.gap < 2 or self.gap % 2:
            raise ValueError(f"pair gap must be even and >= 2, got {self.gap}")


@dataclass(frozen=True)
class AP:
    """k primes in arithmetic progression with fixed difference d."""

    k: int
    d: int

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise ValueError("AP needs k >= 1 and d >= 1")
        if self.k > 20:
            raise ValueError("AP length above 20 is not supported")


@dataclass(frozen=True)
class APAnyDiff:
    """k-term progressions of primes with any common difference."""

    k: int

    def __post_init__(self):
        if not 3 <= self.k <= 20:
            raise ValueError("APAnyDiff needs 3 <= k <= 20")


@dataclass(frozen=True)
class SophieGermain:
    pass


@dataclass(frozen=True)
class Cunningham:
    kind: str
    k: int

    def __post_init__(self):
        if self.kind not in ("first", "second"):
            raise ValueError(f"Cunningham kind must be 'first' or 'second', got {self.kind!r}")
        if not 2 <= self.k <= 12:
            raise ValueError("Cunningham chain length must be in 2..12")


@dataclass(frozen=True)
class Quadratic:
    """Primes n^2 + 1."""


@dataclass(frozen=True)
class Goldbach:
    """Representations of an even number as p + q; the bound is the target."""


@dataclass(frozen=True)
class Cullen:
    pass


@dataclass(frozen=True)
class Woodall:
    pass


def _check_sign(sign):
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")


@dataclass(frozen=True)
class Primorial:
    sign: int

    def __post_init__(self):
        _check_sign(self.sign)


@dataclass(frozen=True)
class Factorial:
    sign: int

    def __post_init__(self):
        _check_sign(self.sign)


@dataclass(frozen=True)
class Repunit:
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("repunit base must be >= 2")


Family = Union[
    Twin, Pair, AP, APAnyDiff, SophieGermain, Cunningham, Quadratic, Goldbach,
    Cullen, Woodall, Primorial, Factorial, Repunit,
]

BIGNUM_FAMILIES = (Cullen, Woodall, Primorial, Factorial, Repunit)
DISCRETE_SUM_FAMILIES = (Primorial, Factorial, Repunit)


def linear_forms(family) -> list[tuple[int, int]]:
    """(a, b) pairs such that the family asks for a*x + b all prime."""
    if isinstance(family, Twin):
        return [(1, 0), (1, 2)]
    if isinstance(family, Pair):
        return [(1, 0), (1, family.gap)]
    if isinstance(family, AP):
        return [(1, i * family.d) for i in range(family.k)]
    if isinstance(family, SophieGermain):
        return [(1, 0), (2, 1)]
    if isinstance(family, Cunningham):
        sgn = 1 if family.kind == "first" else -1
        return [(1 << i, sgn * ((1 << i) - 1)) for i in range(family.k)]
    raise TypeError(f"{family!r} is not a linear family")


def family_tuple(family) -> PolyTuple:
    """The polynomial tuple behind a polynomial family."""
    if isinstance(family, Quadratic):
        return parse_tuple("x^2+1")
    return PolyTuple.linear(linear_forms(family))


def _sign(text):
    if text in ("+", "plus", "+1", "1"):
        return 1
    if text in ("-", "minus", "-1"):
        return -1
    raise ValueError(f"bad sign {text!r}")


def parse_family(text: str):
    """Parse the compact family syntax used by the CLI.

    Examples: ``twin``, ``pair:6``, ``ap:3:30``, ``apany:3``, ``sg``,
    ``cunningham:first:3``, ``quadratic``, ``goldbach``, ``cullen``,
    ``woodall``, ``primorial:+``, ``factorial:-``, ``repunit:10``.
    """
    name, *args = text.strip().lower().split(":")
    try:
        if name == "twin" and not args:
            return Twin()
        if name == "pair" and len(args) == 1:
            return Pair(int(args[0]))
        if name == "ap" and len(args) == 2:
            return AP(int(args[0]), int(args[1]))
        if name == "apany" and len(args) == 1:
            return APAnyDiff(int(args[0]))
        if name in ("sg", "sophiegermain") and not args:
            return SophieGermain()
        if name == "cunningham" and len(args) == 2:
            return Cunningham(args[0], int(args[1]))
        if name == "quadratic" and not args:
            return Quadratic()
        if name == "goldbach" and not args:
            return Goldbach()
        if name == "cullen" and not args:
            return Cullen()
        if name == "woodall" and not args:
            return Woodall()
        if name == "primorial" and len(args) == 1:
            return Primorial(_sign(args[0]))
        if name == "factorial" and len(args) == 1:
            return Factorial(_sign(args[0]))
        if name == "repunit" and len(args) == 1:
            return Repunit(int(args[0]))
    except ValueError as exc:
        raise ValueError(f"bad family {text!r}: {exc}") from None
    raise ValueError(f"unknown family {text!r}")


def family_label(family) -> str:
    """Inverse of :func:`parse_family`."""
    match family:
        case Twin():
            return "twin"
        case Pair(gap=g):
            return f"pair:{g}"
        case AP(k=k, d=d):
            return f"ap:{k}:{d}"
        case APAnyDiff(k=k):
            return f"apany:{k}"
        case SophieGermain():
            return "sg"
        case Cunningham(kind=kind, k=k):
            return f"cunningham:{kind}:{k}"
        case Quadratic():
            return "quadratic"
        case Goldbach():
            return "goldbach"
        case Cullen():
            return "cullen"
        case Woodall():
            return "woodall"
        case Primorial(sign=s):
            return f"primorial:{'+' if s > 0 else '-'}"
        case Factorial(sign=s):
            return f"factorial:{'+' if s > 0 else '-'}"
        case Repunit(base=a):
            return f"repunit:{a}"
    raise TypeError(f"not a family: {family!r}")
