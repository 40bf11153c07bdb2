"""Torus-invariant Weil divisors on the toric variety of a fan.

Sign conventions: ``div(m)_rho = <m, v_rho>``; the monomial ``chi^m`` is a
section of ``O(D)`` iff ``<m, v_rho> >= -D_rho`` for all rays; Cartier local
data satisfies ``<m_sigma, v_rho> = -D_rho`` for ``rho`` in ``sigma(1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import PreconditionError, TorqError
from .fan import ConeIndex, Fan
from .polyhedral import Cone, strict_sign_solution
from .zlinalg import (IntMatrix, IntegerSolver, QuotientGroup, Vector, dot, hermite_normal_form,
                      lattice_intersection, lattice_preimage, solve_integer, solve_rational)


@dataclass(frozen=True)
class WeilDivisor:
    """``sum coeffs[i] * D_i`` over the rays of ``fan``."""

    fan: Fan
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != len(self.fan.rays):
            raise TorqError(f"divisor has {len(self.coeffs)} coefficients, "
                            f"fan has {len(self.fan.rays)} rays")

    def _check(self, other: WeilDivisor):
        if other.fan != self.fan:
            raise TorqError("divisors live on different fans")

    def __add__(self, other: WeilDivisor) -> WeilDivisor:
        self._check(other)
        return WeilDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: WeilDivisor) -> WeilDivisor:
        return self + (-other)

    def __neg__(self) -> WeilDivisor:
        return WeilDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> WeilDivisor:
        return WeilDivisor(self.fan, tuple(k * a for a in self.coeffs))

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)


@dataclass(frozen=True)
class CartierData:
    """Local functionals, one per maximal cone (aligned with ``fan.max_cones``)."""

    divisor: WeilDivisor
    local: tuple[tuple, ...]
    rational: bool = False

    def __getitem__(self, i: int) -> tuple:
        return self.local[i]


def div_char(F: Fan, m: Sequence[int]) -> WeilDivisor:
    if len(m) != F.rank:
        raise TorqError(f"character has length {len(m)}, lattice rank is {F.rank}")
    return WeilDivisor(F, F.ray_matrix @ m)


def _local_system(F: Fan, cone: ConeIndex, D: WeilDivisor) -> tuple[IntMatrix, list[int]]:
    A = IntMatrix.from_rows(F.rays_of(cone), F.rank)
    return A, [-D.coeffs[i] for i in cone]


def is_cartier(D: WeilDivisor) -> Optional[CartierData]:
    F = D.fan
    local = []
    for c in F.max_cones:
        m = solve_integer(*_local_system(F, c, D))
        if m is None:
            return None
        local.append(m)
    return CartierData(D, tuple(local))


def is_qcartier(D: WeilDivisor) -> Optional[CartierData]:
    F = D.fan
    local = []
    for c in F.max_cones:
        m = solve_rational(*_local_system(F, c, D))
        if m is None:
            return None
        local.append(m)
    return CartierData(D, tuple(local), rational=True)


class ClassGroup(QuotientGroup):
    """``Cl(X)``, the cokernel of ``div: M -> Z^rays``."""

    def __init__(self, F: Fan):
        super().__init__(F.ray_matrix)
        self.fan = F

    def class_of(self, D: Union[WeilDivisor, Sequence[int]]) -> Vector:
        coeffs = D.coeffs if isinstance(D, WeilDivisor) else tuple(D)
        return self.normal_form(coeffs)


def class_group(F: Fan) -> ClassGroup:
    return ClassGroup(F)


def is_principal(D: WeilDivisor) -> Optional[Vector]:
    """A character ``m`` with ``div(m) == D``, if any."""
    return solve_integer(D.fan.ray_matrix, D.coeffs)


def linearly_equivalent(D1: WeilDivisor, D2: WeilDivisor) -> bool:
    return is_principal(D1 - D2) is not None


def is_ample(D: WeilDivisor, cd: Optional[CartierData] = None) -> bool:
    """Strict convexity of the support function of a Cartier divisor on a complete fan."""
    F = D.fan
    if not F.is_complete():
        raise PreconditionError("ampleness is only implemented for complete fans")
    if cd is None:
        cd = is_cartier(D)
        if cd is None:
            return False
    for c, m in zip(F.max_cones, cd.local):
        for i, v in enumerate(F.rays):
            if i not in c and not dot(m, v) > -D.coeffs[i]:
                return False
    return True


def cartier_subgroup(F: Fan) -> list[Vector]:
    """HNF basis of the invariant Cartier divisors inside ``Z^rays``."""
    r = len(F.rays)
    basis = hermite_normal_form([tuple(int(i == j) for j in range(r)) for i in range(r)], r)
    for c in F.max_cones:
        proj = IntMatrix.from_rows([tuple(int(j == i) for j in range(r)) for i in c], r) \
            if c else IntMatrix.zeros(0, r)
        local_image = IntMatrix.from_rows(F.rays_of(c), F.rank) if c else IntMatrix.zeros(0, F.rank)
        # D restricted to sigma(1) must lie in the image of M -> Z^sigma(1)
        ok = lattice_preimage(proj, local_image.columns())
        basis = lattice_intersection(basis, ok, r)
    return basis


def cone_index(F: Fan, sigma: Union[Cone, Iterable[int]]) -> ConeIndex:
    if isinstance(sigma, Cone):
        try:
            idx = tuple(sorted(F.ray_index(v) for v in sigma.rays))
        except ValueError:
            raise TorqError(f"{sigma} is not a cone of the fan") from None
    else:
        idx = tuple(sorted(sigma))
    if not F.has_cone(idx):
        raise TorqError(f"{list(idx)} is not a cone of the fan")
    return idx


def effective_with_support(F: Fan, sigma: Union[Cone, Iterable[int]],
                           lattice: Sequence[Sequence[int]]) -> Optional[WeilDivisor]:
    """A divisor in ``lattice`` that vanishes on ``sigma(1)`` and is positive off it.

    Such a divisor is effective with support exactly the complement of the
    affine chart of ``sigma``.
    """
    idx = cone_index(F, sigma)
    r = len(F.rays)
    x = strict_sign_solution(list(lattice), idx, [i for i in range(r) if i not in idx], r)
    return None if x is None else WeilDivisor(F, x)


def local_solver(F: Fan, cone: ConeIndex) -> IntegerSolver:
    return IntegerSolver(IntMatrix.from_rows(F.rays_of(cone), F.rank) if cone
                         else IntMatrix.zeros(0, F.rank))

