"""Limit linear series combinatorics on two-component nodal curves."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Sequence

from .algebra.scalars import QQ
from .linear_series import RamificationSequence, VanishingSequence, ramification_and_weight


class LimitClass(str, Enum):
    NOT_LIMIT = "not_limit"
    CRUDE = "crude"
    REFINED = "refined"


@dataclass(frozen=True)
class NodalVanishingData:
    """Vanishing sequences of the two aspects at the node."""

    d: int
    r: int
    a1: tuple
    a2: tuple

    def __post_init__(self):
        for seq in (self.a1, self.a2):
            if len(seq) != self.r + 1:
                raise ValueError(f"sequence {seq} does not have r+1 = {self.r + 1} entries")
            VanishingSequence(tuple(seq), self.d)


def classify_limit(data: NodalVanishingData) -> LimitClass:
    sums = [data.a1[i] + data.a2[data.r - i] for i in range(data.r + 1)]
    if any(s < data.d for s in sums):
        return LimitClass.NOT_LIMIT
    if all(s == data.d for s in sums):
        return LimitClass.REFINED
    return LimitClass.CRUDE


def elliptic_tail_sequences(g: int, r: int, c: Sequence[int]) -> tuple[tuple, tuple]:
    """Node sequence ``b`` on the elliptic tail and sequence ``a`` at the marked point.

    ``c`` is the vanishing sequence at the node of the aspect on the genus
    g-1 component; it must start at 1 or later and end at g-1.
    """
    c = tuple(c)
    if len(c) != r + 1:
        raise ValueError(f"c must have r+1 = {r + 1} entries")
    VanishingSequence(c, g - 1)
    if c[0] < 1 or c[r] != g - 1:
        raise ValueError(f"need c_0 >= 1 and c_r = g-1 = {g - 1}, got {c}")
    b = tuple(g - 1 - c[r - i] for i in range(r + 1))
    a = [0] * (r + 1)
    a[r] = g - 1
    for i in range(1, r + 1):
        a[r - i] = g - 2 - b[i]
    return b, tuple(a)


@dataclass(frozen=True)
class TorsionCoordinate:
    """A point of C/(Z + tau Z) in lattice coordinates, reduced mod 1."""

    u: object
    v: object

    def __init__(self, u, v):
        object.__setattr__(self, "u", _frac_part(QQ(u)))
        object.__setattr__(self, "v", _frac_part(QQ(v)))


def _frac_part(q):
    return q - (q.numerator // q.denominator)


def torsion_order(t: TorsionCoordinate) -> int:
    du, dv = t.u.denominator, t.v.denominator
    return du * dv // gcd(du, dv)


def torsion_gate(g: int, t: TorsionCoordinate) -> bool:
    """True iff p - q has order exactly 2g - 2."""
    if g < 3:
        raise ValueError("g must be at least 3")
    return torsion_order(t) == 2 * g - 2


def expected_dimension(g: int, r: int) -> int:
    return 2 * g - r * (r - 1) // 2 - 1


def naive_bound(g: int, r: int) -> int:
    return 2 * g - 1 - r * r


def minimal_ramification(g: int, r: int) -> RamificationSequence:
    """(0,...,0, r,...,r, g-1) with g-r-1 zeros and r copies of r."""
    if g < 3 or r < 0 or g - r - 1 < 0:
        raise ValueError(f"invalid (g, r) = ({g}, {r})")
    alphas = (0,) * (g - r - 1) + (r,) * r + (g - 1,)
    return RamificationSequence(alphas, sum(alphas))


def vanishing_from_ramification(alphas: Sequence[int]) -> tuple:
    return tuple(a + i for i, a in enumerate(alphas))


def gaps_from_ramification(alphas: Sequence[int]) -> tuple:
    return tuple(a + i + 1 for i, a in enumerate(alphas))


__all__ = [
    "LimitClass",
    "NodalVanishingData",
    "classify_limit",
    "elliptic_tail_sequences",
    "TorsionCoordinate",
    "torsion_order",
    "torsion_gate",
    "expected_dimension",
    "naive_bound",
    "minimal_ramification",
    "ramification_and_weight",
]
