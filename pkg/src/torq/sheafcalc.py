"""Global sections of divisorial sheaves, graded pieces of ``Gamma_*`` and a
vanishing test for the sheaves associated with cyclic modules ``S / I``.

The vanishing test uses the support criterion: the sheaf of ``S / I`` is
zero iff ``V(I)`` misses ``Xhat``. Since every invariant closed subset that
meets the chart of a maximal source cone contains its closed orbit, this
holds iff for each maximal source cone some generator of ``I`` is
orthogonal to it. The bounded cross-check tests the equivalent
annihilation statement on a box of monomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coordring import GradedCoordinateRing, MonomialIdeal, in_veronese, saturated_covering
from .divisor import WeilDivisor
from .errors import PreconditionError
from .fan import Fan
from .polyhedral import lattice_points
from .presentation import QuotientPresentation
from .zlinalg import Vector, dot


@dataclass(frozen=True)
class SectionSpace:
    """Monomial basis of ``Gamma(X, O(D))``, sorted lexicographically."""

    divisor: WeilDivisor
    basis: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.basis)


def sections_basis(F: Fan, D: WeilDivisor) -> SectionSpace:
    if D.fan != F:
        raise PreconditionError("divisor does not live on the fan")
    if not F.is_complete():
        raise PreconditionError("fan is not complete: the space of sections is infinite")
    pts = lattice_points(F.rays, [-c for c in D.coeffs], F.rank)
    return SectionSpace(D, tuple(pts))


def gamma_star_piece(qp: QuotientPresentation, D: WeilDivisor, w_rep: Sequence[int]
                     ) -> SectionSpace:
    """The degree ``[w_rep]`` piece of ``Gamma_*(O(D))``, i.e. sections of ``D + phi2(w_rep)``."""
    Dw = WeilDivisor(qp.target, qp.triangle.phi2 @ w_rep)
    return sections_basis(qp.target, D + Dw)


def vanishing_test(R: GradedCoordinateRing, I: MonomialIdeal) -> bool:
    """True iff the sheaf associated with ``S / I`` is zero."""
    src = R.presentation.source
    for c in src.max_cones:
        rays = src.rays_of(c)
        if not any(all(dot(g, r) == 0 for r in rays) for g in I.generators):
            return False
    return True


@dataclass(frozen=True)
class ChartCheck:
    cone: tuple[int, ...]
    saturated: Vector
    checked: int
    killed: int
    max_power: int

    @property
    def annihilated(self) -> bool:
        return self.killed == self.checked


@dataclass(frozen=True)
class CrosscheckReport:
    predicted: bool
    charts: tuple[ChartCheck, ...]

    @property
    def observed(self) -> bool:
        return all(c.annihilated for c in self.charts)

    @property
    def agrees(self) -> bool:
        return self.predicted == self.observed


def _box_monomials(R: GradedCoordinateRing, bound: int) -> list[Vector]:
    n = R.rank
    gens = list(R.xbar_cone.generators)
    A = gens + [tuple(-int(i == j) for j in range(n)) for i in range(n)] \
        + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    b = [0] * len(gens) + [-bound] * n + [-bound] * n
    return lattice_points(A, b, n)


def vanishing_crosscheck(R: GradedCoordinateRing, I: MonomialIdeal, bound: int, power: int
                         ) -> CrosscheckReport:
    """Bounded annihilation check of the vanishing criterion.

    For every maximal chart with saturated monomial ``s``, each monomial
    outside ``I`` whose degree is invertible over the chart and whose
    coordinates are at most ``bound`` in absolute value is multiplied by
    ``s^k`` for ``k <= power`` until it lands in ``I``.
    """
    F = R.presentation.target
    box = [m for m in _box_monomials(R, bound) if not I.contains(m)]
    charts = []
    for c, s in zip(F.max_cones, saturated_covering(R)):
        todo = [m for m in box if in_veronese(R, c, m)]
        killed, worst = 0, 0
        for m in todo:
            for k in range(power + 1):
                if I.contains(tuple(a + k * b for a, b in zip(m, s))):
                    killed += 1
                    worst = max(worst, k)
                    break
        charts.append(ChartCheck(c, s, len(todo), killed, worst))
    return CrosscheckReport(vanishing_test(R, I), tuple(charts))
