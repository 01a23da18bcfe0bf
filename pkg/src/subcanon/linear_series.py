"""Riemann-Roch dimensions, Weierstrass gaps and vanishing sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra.linalg import matrix_rank, rref
from .algebra.poly import MultiPoly, monomials_of_degree
from .algebra.series import AtLeast
from .curves import CompleteIntersectionCurve, LocalBranch, ProjectivePoint, genus, local_branch


class ModelInconsistencyError(ValueError):
    pass


class TruncationError(ValueError):
    """A needed vanishing order exceeds the branch precision."""


@dataclass(frozen=True)
class VanishingSequence:
    orders: tuple
    d: int

    def __post_init__(self):
        o = self.orders
        if any(b <= a for a, b in zip(o, o[1:])):
            raise ValueError(f"vanishing sequence {o} is not strictly increasing")
        if o and (o[0] < 0 or o[-1] > self.d):
            raise ValueError(f"vanishing sequence {o} leaves [0, {self.d}]")

    @property
    def r(self) -> int:
        return len(self.orders) - 1


@dataclass(frozen=True)
class RamificationSequence:
    alphas: tuple
    weight: int


@dataclass(frozen=True)
class GapSequence:
    gaps: tuple

    @property
    def genus(self) -> int:
        return len(self.gaps)


@dataclass
class CanonicalSystem:
    curve: CompleteIntersectionCurve
    twist: int
    basis: list
    dimension: int


def ideal_piece_rows(curve: CompleteIntersectionCurve, k: int, monos: Sequence[tuple]) -> list[list]:
    """Coefficient vectors spanning the degree-k part of the curve's ideal."""
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in curve.forms:
        if f.degree > k:
            continue
        for m in monomials_of_degree(curve.nvars, k - f.degree):
            g = f * MultiPoly.monomial(m)
            row = [0] * len(monos)
            for mm, c in g.terms.items():
                row[index[mm]] = c
            rows.append(row)
    return rows


def restricted_system(curve: CompleteIntersectionCurve, k: int) -> list[MultiPoly]:
    """Monomials of degree k forming a basis modulo the ideal's degree-k piece."""
    monos = monomials_of_degree(curve.nvars, k)
    rows = ideal_piece_rows(curve, k, monos)
    pivots = set(rref(rows)[1]) if rows else set()
    return [MultiPoly.monomial(m) for i, m in enumerate(monos) if i not in pivots]


def canonical_system(curve: CompleteIntersectionCurve) -> CanonicalSystem:
    k = curve.canonical_twist
    if k < 1:
        raise ValueError("curve has no positive canonical twist")
    basis = restricted_system(curve, k)
    g = genus(curve)
    if len(basis) != g:
        raise ModelInconsistencyError(
            f"degree-{k} forms modulo the ideal have dimension {len(basis)}, genus is {g}"
        )
    return CanonicalSystem(curve, k, basis, len(basis))


def taylor_matrix(forms: Sequence[MultiPoly], branch: LocalBranch, ncols: int | None = None) -> list[list]:
    """Row i holds the first ``ncols`` Taylor coefficients of form i along the branch."""
    if ncols is None:
        ncols = branch.order + 1
    if ncols > branch.order + 1:
        raise TruncationError(f"need {ncols} coefficients, branch known to order {branch.order}")
    return [branch.compose(f).coeffs[:ncols] for f in forms]


def vanishing_sequence(
    forms: Sequence[MultiPoly],
    curve: CompleteIntersectionCurve,
    point: ProjectivePoint,
    branch: LocalBranch | None = None,
    d: int | None = None,
) -> VanishingSequence:
    """Distinct orders of vanishing attained by the span of ``forms``."""
    if branch is None:
        branch = local_branch(curve, point)
    rows = taylor_matrix(forms, branch)
    _, pivots = rref(rows)
    if len(pivots) < len(forms):
        # either dependent modulo the ideal, or a combination vanishes past order N
        raise TruncationError(
            "forms are dependent along the branch to order "
            f"{branch.order}: dependent basis or truncation too small"
        )
    if d is None:
        d = forms[0].degree * curve.degree if forms else 0
    return VanishingSequence(tuple(pivots), d)


def ramification_and_weight(v: VanishingSequence | Sequence[int]) -> RamificationSequence:
    orders = v.orders if isinstance(v, VanishingSequence) else tuple(v)
    alphas = tuple(a - i for i, a in enumerate(orders))
    return RamificationSequence(alphas, sum(alphas))


class PointAnalysis:
    """Caches the branch and canonical Taylor matrix for one pointed curve."""

    def __init__(self, curve: CompleteIntersectionCurve, point: ProjectivePoint, order: int | None = None):
        self.curve = curve
        self.point = point
        self.g = genus(curve)
        if order is None:
            order = 4 * self.g
        if order < 2 * self.g - 2:
            raise TruncationError(f"order {order} is below 2g-2 = {2 * self.g - 2}")
        self.system = canonical_system(curve)
        self.branch = local_branch(curve, point, order)
        self.taylor = taylor_matrix(self.system.basis, self.branch)
        if matrix_rank(self.taylor) < self.g:
            raise TruncationError(
                f"a canonical form vanishes beyond order {order}; increase the truncation"
            )

    def h0_dual(self, n: int) -> int:
        """h^0(K - np): canonical forms vanishing to order >= n."""
        if n <= 0:
            return self.g
        if n > 2 * self.g - 2:
            return 0
        if n > self.branch.order + 1:
            raise TruncationError(f"n = {n} exceeds branch order {self.branch.order}")
        sub = [row[:n] for row in self.taylor]
        return self.g - matrix_rank(sub)

    def h0(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be non-negative")
        return n - self.g + 1 + self.h0_dual(n)

    def h0_table(self, upto: int | None = None) -> list[int]:
        if upto is None:
            upto = 2 * self.g - 1
        return [self.h0(n) for n in range(upto + 1)]

    def gaps(self) -> GapSequence:
        table = self.h0_table(2 * self.g - 1)
        gaps = tuple(n for n in range(1, 2 * self.g) if table[n] == table[n - 1])
        if len(gaps) != self.g:
            raise ModelInconsistencyError(f"found {len(gaps)} gaps for genus {self.g}")
        return GapSequence(gaps)

    def canonical_vanishing(self) -> VanishingSequence:
        return vanishing_sequence(self.system.basis, self.curve, self.point, self.branch, 2 * self.g - 2)

    def is_subcanonical(self) -> bool:
        return self.gaps().gaps[-1] == 2 * self.g - 1

    def report(self) -> dict:
        gaps = self.gaps()
        van = self.canonical_vanishing()
        ram = ramification_and_weight(van)
        return {
            "genus": self.g,
            "h0_table": self.h0_table(),
            "gaps": list(gaps.gaps),
            "vanishing": list(van.orders),
            "ramification": list(ram.alphas),
            "weight": ram.weight,
            "subcanonical": gaps.gaps[-1] == 2 * self.g - 1,
            "semigroup_ok": semigroup_check(gaps),
        }


def h0_of_multiple(curve, point, n: int, order: int | None = None) -> int:
    return PointAnalysis(curve, point, order).h0(n)


def gap_sequence(curve, point, order: int | None = None) -> GapSequence:
    return PointAnalysis(curve, point, order).gaps()


def is_subcanonical(curve, point, order: int | None = None) -> bool:
    return PointAnalysis(curve, point, order).is_subcanonical()


def semigroup_check(gaps: GapSequence | Sequence[int]) -> bool:
    """True iff the complement of the gaps in N is closed under addition."""
    gs = set(gaps.gaps if isinstance(gaps, GapSequence) else gaps)
    if not gs:
        return True
    top = max(gs)
    nongaps = [n for n in range(1, top + 1) if n not in gs]
    return not any(a + b in gs for a in nongaps for b in nongaps if a <= b)


def hyperelliptic_h0(g: int, n: int) -> int:
    """h^0(np) at a Weierstrass point of a hyperelliptic curve, 0 <= n <= 2g-2."""
    if g < 2 or not 0 <= n <= 2 * g - 2:
        raise ValueError(f"need g >= 2 and 0 <= n <= 2g-2, got g={g}, n={n}")
    return (n + 2) // 2


def hyperelliptic_h0_bruteforce(g: int, n: int) -> int:
    """Count z^i and z^i w on w^2 = f(z), deg f = 2g+1, with pole order <= n at infinity."""
    if g < 2 or not 0 <= n <= 2 * g - 2:
        raise ValueError(f"need g >= 2 and 0 <= n <= 2g-2, got g={g}, n={n}")
    count = 0
    i = 0
    while 2 * i <= n:
        count += 1
        i += 1
    i = 0
    while 2 * i + 2 * g + 1 <= n:
        count += 1
        i += 1
    return count


def is_order_known(value) -> bool:
    return not isinstance(value, AtLeast)
