"""The homogeneous coordinate ring ``S = Gamma(Xhat, O)`` at the level of monomials.

``S`` is the semigroup ring of ``section_cone meet Mhat`` where
``section_cone`` is the dual of ``xbar_cone``, the cone spanned by all rays
of the source fan. It is graded by ``W = Mhat / M``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .divisor import WeilDivisor, local_solver
from .errors import PreconditionError, TorqError
from .fan import ConeIndex
from .polyhedral import Cone, hilbert_basis, lattice_points
from .presentation import QuotientPresentation, WeightGroup
from .zlinalg import IntMatrix, Vector, dot, lattice_index, lattice_preimage


class GradedCoordinateRing:
    """Monomial model of the coordinate ring of ``Xhat`` for a quotient presentation."""

    def __init__(self, qp: QuotientPresentation):
        self.presentation = qp
        self.triangle = qp.triangle
        self.rank = qp.source.rank
        self.xbar_cone = Cone(qp.source.rays, self.rank)
        self.section_cone = self.xbar_cone.dual()
        self.weights = WeightGroup(qp.triangle)

    @cached_property
    def hilbert_basis(self) -> tuple[Vector, ...]:
        return tuple(hilbert_basis(self.section_cone))

    @property
    def degrees(self) -> tuple[Vector, ...]:
        return tuple(self.degree(h) for h in self.hilbert_basis)

    def degree(self, mhat: Sequence[int]) -> Vector:
        return self.weights.project(mhat)

    def in_monoid(self, mhat: Sequence[int]) -> bool:
        return len(mhat) == self.rank and self.section_cone.contains(mhat)

    def _require(self, mhat: Sequence[int]):
        if not self.in_monoid(mhat):
            raise PreconditionError(f"{tuple(mhat)} is not in the section monoid")

    def tight_cone(self, mhat: Sequence[int]) -> ConeIndex:
        """Indices of the source rays on which ``mhat`` vanishes."""
        return tuple(i for i, r in enumerate(self.presentation.source.rays) if dot(mhat, r) == 0)

    def degree_piece(self, w_rep: Sequence[int]) -> list[Vector]:
        """All monoid points of the same degree as ``w_rep``, sorted.

        They are ``w_rep + phi1(m)`` for the ``m`` satisfying
        ``<phi1(m) + w_rep, g> >= 0`` on the generators ``g`` of ``xbar_cone``.
        """
        p1 = self.triangle.phi1
        gens = self.xbar_cone.generators
        A = [p1.T @ g for g in gens]
        b = [-dot(w_rep, g) for g in gens]
        pts = lattice_points(A, b, p1.cols)
        return sorted(tuple(a + c for a, c in zip(w_rep, p1 @ m)) for m in pts)


def section_monoid(qp: QuotientPresentation) -> GradedCoordinateRing:
    return GradedCoordinateRing(qp)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal of ``S`` given by generators in the section monoid."""

    ring: GradedCoordinateRing
    generators: tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        for g in gens:
            if not self.ring.in_monoid(g):
                raise PreconditionError(f"generator {g} is not in the section monoid")
        object.__setattr__(self, "generators", gens)

    def contains(self, mhat: Sequence[int]) -> bool:
        C = self.ring.section_cone
        return any(C.contains(tuple(a - b for a, b in zip(mhat, g))) for g in self.generators)


def irrelevant_membership(R: GradedCoordinateRing, mhat: Sequence[int]) -> bool:
    """True iff the monomial lies in the irrelevant ideal."""
    R._require(mhat)
    return R.presentation.source.has_cone(R.tight_cone(mhat))


def _orthogonal_point(R: GradedCoordinateRing, cone: ConeIndex) -> Vector:
    """Sum of the section-cone generators vanishing on ``cone``: a relative
    interior point of the face of ``section_cone`` dual to it."""
    rays = R.presentation.source.rays_of(cone)
    out = [0] * R.rank
    for g in R.section_cone.generators:
        if all(dot(g, r) == 0 for r in rays):
            out = [a + b for a, b in zip(out, g)]
    return tuple(out)


def irrelevant_generators(R: GradedCoordinateRing) -> list[Vector]:
    """One monomial per maximal source cone; together they generate the
    irrelevant ideal up to radical."""
    out = []
    for c in R.presentation.source.max_cones:
        m = _orthogonal_point(R, c)
        assert R.tight_cone(m) == c, "maximal source cone is not a face of the hull"
        out.append(m)
    return out


def _orbit_image(R: GradedCoordinateRing, cone: ConeIndex) -> ConeIndex:
    qp = R.presentation
    return qp.target.locate(qp.Q @ qp.source.cone(cone).relative_interior_point())


def is_saturated(R: GradedCoordinateRing, mhat: Sequence[int]) -> bool:
    """Whether the nonvanishing locus of the monomial is a union of fibres.

    Works orbitwise: the orbit of a source cone maps onto the orbit of the
    smallest base cone containing the image of its relative interior.
    """
    R._require(mhat)
    cones = R.presentation.source.cones
    tight = set(R.tight_cone(mhat))
    A = {c for c in cones if tight.issuperset(c)}
    images = {_orbit_image(R, c) for c in A}
    return all(c in A for c in cones if _orbit_image(R, c) in images)


def saturated_covering(R: GradedCoordinateRing) -> list[Vector]:
    """Saturated monomials whose nonvanishing loci map onto the maximal charts."""
    out = irrelevant_generators(R)
    for m in out:
        assert is_saturated(R, m)
    return out


def veronese_lattice(R: GradedCoordinateRing, sigma: Iterable[int]) -> list[Vector]:
    """``{mhat : phi2(mhat) is principal on the chart of sigma}`` as a sublattice of ``Mhat``."""
    F = R.presentation.target
    c = tuple(sorted(sigma))
    if c not in F.max_cones:
        raise TorqError(f"{list(c)} is not a maximal cone")
    p2 = R.triangle.phi2.select_rows(c) if c else IntMatrix.zeros(0, R.rank)
    local = IntMatrix.from_rows(F.rays_of(c), F.rank) if c else IntMatrix.zeros(0, F.rank)
    return lattice_preimage(p2, local.columns())


def veronese_degrees(R: GradedCoordinateRing, sigma: Iterable[int]) -> list[Vector]:
    """Generators (in W normal form) of the weights invertible over the chart."""
    out = []
    for v in veronese_lattice(R, sigma):
        w = R.degree(v)
        if any(w) and w not in out:
            out.append(w)
    return sorted(out)


def veronese_index(R: GradedCoordinateRing, sigma: Iterable[int]) -> Optional[int]:
    """Index of the chart's Veronese subgroup in W (None if infinite)."""
    return lattice_index(veronese_lattice(R, sigma), R.rank)


def in_veronese(R: GradedCoordinateRing, sigma: Iterable[int], mhat: Sequence[int]) -> bool:
    c = tuple(sorted(sigma))
    rhs = [(R.triangle.phi2 @ mhat)[i] for i in c]
    return local_solver(R.presentation.target, c).solve(rhs) is not None


def weight_divisor(R: GradedCoordinateRing, mhat: Sequence[int]) -> WeilDivisor:
    """``D_w = phi2(mhat)``; the weight module of ``[mhat]`` is ``O(D_w)``."""
    return WeilDivisor(R.presentation.target, R.triangle.phi2 @ mhat)


def weight_module_member(R: GradedCoordinateRing, sigma: Iterable[int], mhat: Sequence[int],
                         m: Sequence[int]) -> bool:
    """Whether ``chi^m`` is a local section of the weight module over the chart."""
    F = R.presentation.target
    D = weight_divisor(R, mhat).coeffs
    return all(dot(m, F.rays[i]) >= -D[i] for i in sigma)
