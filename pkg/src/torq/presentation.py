"""Triangles ``M -> Mhat -> Z^rays`` and the quotient presentations they define.

A triangle is a factorization ``phi2 . phi1 = div`` with ``phi1`` injective
such that, for every maximal cone, the image of ``phi2`` contains a divisor
that vanishes on the cone's rays and is positive on all other rays.

Only maximal cones are checked. For a face ``tau`` of ``sigma`` pick
``m`` in the relative interior of ``sigma^vee`` meet ``tau^perp``; then
``k * D_sigma + div(m)`` vanishes exactly on ``tau(1)`` and is positive
elsewhere for large ``k``, so the condition propagates to every invariant
affine open subset.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .divisor import (ClassGroup, WeilDivisor, cartier_subgroup, effective_with_support,
                      is_ample, is_cartier, is_qcartier)
from .errors import FanError, PreconditionError, TriangleError
from .fan import Fan, FanMap, new_fan_map
from .polyhedral import Cone
from .zlinalg import (IntMatrix, QuotientGroup, Vector, coordinates_in, is_primitive,
                      lattice_index, lattice_preimage, primitive, smith_normal_form)


@dataclass(frozen=True)
class Triangle:
    """``phi1: M -> Mhat`` (an ``Mhat_rank x rank`` matrix) and ``phi2: Mhat -> Z^rays``.

    Construction validates all triangle axioms and raises :class:`TriangleError`
    naming the failed one.
    """

    base_fan: Fan
    phi1: IntMatrix
    phi2: IntMatrix
    effective: tuple[Vector, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        F, p1, p2 = self.base_fan, self.phi1, self.phi2
        r = len(F.rays)
        if p1.cols != F.rank or p2.rows != r or p2.cols != p1.rows:
            raise TriangleError(
                "dimensions",
                f"phi1 must be ?x{F.rank} and phi2 {r}x{p1.rows}; got {p1.shape} and {p2.shape}")
        if p2 @ p1 != F.ray_matrix:
            raise TriangleError("composition", "phi2 . phi1 differs from the divisor map div")
        if p1.rank < F.rank:
            raise TriangleError("injective", "phi1: M -> Mhat is not injective")
        found = []
        for c in F.max_cones:
            D = effective_with_support(F, c, p2.columns())
            if D is None:
                raise TriangleError(
                    "effective",
                    f"no divisor in the image of phi2 is effective with support "
                    f"outside cone {list(c)}")
            found.append(D.coeffs)
        object.__setattr__(self, "effective", tuple(found))

    @property
    def Mhat_rank(self) -> int:
        return self.phi1.rows


def new_triangle(base_fan: Fan, phi1: IntMatrix, phi2: IntMatrix) -> Triangle:
    return Triangle(base_fan, phi1, phi2)


@dataclass(frozen=True)
class PresentationReport:
    """Outcome of the four fan conditions for a map of fans."""

    finite_cokernel: bool
    face_fan: Optional[Cone]
    max_bijective: bool
    ray_bijective: bool
    primitive_images: bool
    ray_map: tuple[Optional[int], ...]
    max_map: tuple[Optional[tuple[int, ...]], ...]

    @property
    def verdict(self) -> bool:
        return (self.finite_cokernel and self.face_fan is not None and self.max_bijective
                and self.ray_bijective and self.primitive_images)

    def conditions(self) -> dict[str, bool]:
        return {
            "finite_cokernel": self.finite_cokernel,
            "face_fan": self.face_fan is not None,
            "max_bijective": self.max_bijective,
            "ray_bijective": self.ray_bijective,
            "primitive_images": self.primitive_images,
        }


def check_presentation(fm: FanMap) -> PresentationReport:
    S, T, Q = fm.source, fm.target, fm.matrix
    finite_cokernel = Q.rank == T.rank
    face_fan = S.enclosing_face_fan()

    images = [Q @ v for v in S.rays]
    ray_map = []
    for w in images:
        p = primitive(w)
        ray_map.append(T.rays.index(p) if any(w) and p in T.rays else None)
    ray_bijective = (None not in ray_map and len(set(ray_map)) == len(ray_map) == len(T.rays))
    primitive_images = all(any(w) and is_primitive(w) for w in images)

    max_map = [fm.image_cone_index(c) for c in S.max_cones]
    max_bijective = (all(m in T.max_cones for m in max_map)
                     and len(set(max_map)) == len(max_map) == len(T.max_cones))
    return PresentationReport(finite_cokernel, face_fan, max_bijective, ray_bijective,
                              primitive_images, tuple(ray_map), tuple(max_map))


@dataclass(frozen=True)
class QuotientPresentation:
    """The fan map ``Q: (Nhat, Dhat) -> (N, D)`` built from a triangle."""

    fan_map: FanMap
    triangle: Triangle
    sigma_bar: Cone
    ray_bijection: tuple[int, ...]

    @property
    def source(self) -> Fan:
        return self.fan_map.source

    @property
    def target(self) -> Fan:
        return self.fan_map.target

    @property
    def Q(self) -> IntMatrix:
        return self.fan_map.matrix


def build_presentation(T: Triangle) -> QuotientPresentation:
    """Dualize the triangle and assemble the fan of the quasiaffine ``Xhat``.

    The source ray for ``rho`` is the row ``phi2[rho]`` (the image of the dual
    basis vector under ``phi2^T``); each cone of the base fan lifts to the cone
    over the corresponding rows. ``Q`` is ``phi1^T``.
    """
    F = T.base_fan
    psi_rows = [T.phi2.row(i) for i in range(len(F.rays))]
    try:
        source = Fan.from_rays(T.Mhat_rank, psi_rows, F.max_cones)
        fm = new_fan_map(T.phi1.T, source, F)
    except FanError as exc:  # pragma: no cover - excluded by the triangle axioms
        raise RuntimeError(f"internal error: lifted fan is invalid ({exc})") from exc
    report = check_presentation(fm)
    if not report.verdict:  # pragma: no cover
        raise RuntimeError(f"internal error: lifted fan fails {report.conditions()}")
    return QuotientPresentation(fm, T, report.face_fan, tuple(report.ray_map))


def strict_transform(qp: QuotientPresentation, D: WeilDivisor) -> WeilDivisor:
    if D.fan != qp.target:
        raise PreconditionError("divisor does not live on the base fan")
    return WeilDivisor(qp.source, tuple(D.coeffs[j] for j in qp.ray_bijection))


def pushforward(qp: QuotientPresentation, Dhat: WeilDivisor) -> WeilDivisor:
    if Dhat.fan != qp.source:
        raise PreconditionError("divisor does not live on the source fan")
    coeffs = [0] * len(qp.target.rays)
    for i, j in enumerate(qp.ray_bijection):
        coeffs[j] = Dhat.coeffs[i]
    return WeilDivisor(qp.target, tuple(coeffs))


# --- canonical triangles ---------------------------------------------------

def cox_triangle(F: Fan) -> Triangle:
    """``M -> Z^rays -> Z^rays`` with ``phi2`` the identity."""
    V = F.ray_matrix
    if V.rank < F.rank:
        raise PreconditionError(
            "fan is not nondegenerate (div is not injective); use canonical_triangle")
    return Triangle(F, V, IntMatrix.identity(len(F.rays)))


def canonical_triangle(F: Fan) -> Triangle:
    """``M -> M' + Z^rays -> Z^rays`` where ``M'`` is the kernel of div."""
    V = F.ray_matrix
    r = len(F.rays)
    snf = smith_normal_form(V)
    k = F.rank - snf.rank
    # coordinates along the kernel summand (last k columns of the right transform)
    split = snf.right_inv.select_rows(range(snf.rank, F.rank))
    phi1 = split.vstack(V)
    phi2 = IntMatrix.zeros(r, k).hstack(IntMatrix.identity(r))
    return Triangle(F, phi1, phi2)


def kajiwara_triangle(F: Fan) -> Triangle:
    """``M -> CDiv -> Z^rays``; needs enough Cartier divisors."""
    r = len(F.rays)
    C = cartier_subgroup(F)
    for c in F.max_cones:
        if effective_with_support(F, c, C) is None:
            raise PreconditionError(
                f"not enough Cartier divisors: no effective Cartier divisor has support "
                f"outside cone {list(c)}")
    phi2 = IntMatrix.from_columns(C, r)
    cols = [coordinates_in(C, d) for d in F.ray_matrix.columns()]
    return Triangle(F, IntMatrix.from_columns(cols, len(C)), phi2)


def ample_triangle(F: Fan, D: WeilDivisor) -> Triangle:
    """``M -> M + Z -> Z^rays``, ``(m, k) -> div(m) + k D``, for an ample Cartier ``D``."""
    if D.fan != F:
        raise PreconditionError("divisor does not live on the fan")
    if not F.is_complete():
        raise PreconditionError("fan is not complete")
    cd = is_cartier(D)
    if cd is None:
        raise PreconditionError("divisor is not Cartier")
    if not is_ample(D, cd):
        raise PreconditionError("divisor not ample")
    n = F.rank
    phi1 = IntMatrix.identity(n).vstack(IntMatrix.zeros(1, n))
    phi2 = F.ray_matrix.hstack(IntMatrix.from_columns([D.coeffs], len(F.rays)))
    return Triangle(F, phi1, phi2)


# --- weights and classification --------------------------------------------

class WeightGroup(QuotientGroup):
    """``W = Mhat / M`` with normal-form projection and the map ``W -> Cl(X)``."""

    def __init__(self, T: Triangle):
        super().__init__(T.phi1)
        self.triangle = T
        self.class_group = ClassGroup(T.base_fan)

    def project(self, mhat: Sequence[int]) -> Vector:
        return self.normal_form(mhat)

    def snake_class(self, mhat: Sequence[int]) -> Vector:
        """Class of the weight-module divisor ``phi2(mhat)`` in ``Cl(X)``."""
        return self.class_group.class_of(self.triangle.phi2 @ mhat)

    def snake_images(self) -> list[Vector]:
        """Images of the generators of ``W`` in ``Cl(X)`` normal form."""
        return [self.snake_class(g) for g in self.generators()]


def weight_group(T: Triangle) -> WeightGroup:
    return WeightGroup(T)


def snake_class(T: Triangle, mhat: Sequence[int]) -> Vector:
    return WeightGroup(T).snake_class(mhat)


def cartier_preimage(T: Triangle) -> list[Vector]:
    """HNF basis of ``phi2^{-1}(CDiv)`` inside ``Mhat``."""
    return lattice_preimage(T.phi2, cartier_subgroup(T.base_fan))


def cartierization(T: Triangle) -> Triangle:
    """Restrict ``Mhat`` to the preimage of the Cartier divisors."""
    P = cartier_preimage(T)
    cols = [coordinates_in(P, c) for c in T.phi1.columns()]
    phi1 = IntMatrix.from_columns(cols, len(P))
    phi2 = T.phi2 @ IntMatrix.from_columns(P, T.Mhat_rank) if P else \
        IntMatrix.zeros(len(T.base_fan.rays), 0)
    try:
        return Triangle(T.base_fan, phi1, phi2)
    except TriangleError as exc:
        raise TriangleError(exc.axiom, f"cartierization is not a triangle: {exc}") from None


def cartierization_index(T: Triangle) -> Optional[int]:
    """Index of the cartierized weight group in ``W`` (None if infinite)."""
    return lattice_index(cartier_preimage(T), T.Mhat_rank)


@dataclass(frozen=True)
class Classification:
    good: bool
    geometric: bool
    principal: bool


def classify(T: Triangle) -> Classification:
    """Quotient type: always good; geometric iff phi2 lands in Q-Cartier divisors,
    principal (a torsor) iff it lands in Cartier divisors."""
    images = [WeilDivisor(T.base_fan, c) for c in T.phi2.columns()]
    principal = all(is_cartier(D) is not None for D in images)
    geometric = principal or all(is_qcartier(D) is not None for D in images)
    return Classification(True, geometric, principal)


# --- random valid triangles -------------------------------------------------

def random_unimodular(n: int, rng: random.Random, steps: Optional[int] = None
                      ) -> tuple[IntMatrix, IntMatrix]:
    """A random unimodular matrix and its inverse (product of elementary moves)."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n if steps is None else steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # U <- E U with E = I + c e_ij, so Ui <- Ui E^{-1}
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= c * row[i]
        if rng.random() < 0.3:
            U[i] = [-a for a in U[i]]
            for row in Ui:
                row[i] = -row[i]
    return IntMatrix.from_rows(U, n), IntMatrix.from_rows(Ui, n)


def random_triangle(F: Fan, rng: random.Random, max_extra: int = 2) -> Triangle:
    """A random valid triangle: Cox, twisted by an automorphism of ``Mhat`` and
    extended by principal columns."""
    T = cox_triangle(F)
    U, Ui = random_unimodular(T.Mhat_rank, rng)
    phi1, phi2 = U @ T.phi1, T.phi2 @ Ui
    for _ in range(rng.randint(0, max_extra)):
        m0 = [rng.randint(-2, 2) for _ in range(F.rank)]
        phi1 = phi1.vstack(IntMatrix.zeros(1, F.rank))
        phi2 = phi2.hstack(IntMatrix.from_columns([F.ray_matrix @ m0], len(F.rays)))
    return Triangle(F, phi1, phi2)
