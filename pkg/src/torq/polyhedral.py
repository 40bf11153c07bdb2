"""Rational polyhedral cones with exact integer arithmetic.

A :class:`Cone` is stored by generators (nonnegative span). Its inequality
description is the generator list of the dual cone, computed on first use by
the double description method and cached on the instance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, floor
from typing import Iterable, Optional, Sequence

from .zlinalg import (IntMatrix, QuotientGroup, Vector, dot, hermite_normal_form, kernel_basis,
                      primitive, rank_of, saturation, solve_rational, unimodular_completion,
                      unimodular_inverse)


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def _combine(a: int, u: Vector, b: int, v: Vector) -> Vector:
    return primitive(tuple(a * x + b * y for x, y in zip(u, v)))


def double_description(inequalities: Iterable[Sequence[int]], dim: int
                       ) -> tuple[list[Vector], list[Vector]]:
    """Generators of ``{x : <a, x> >= 0 for all a}``.

    Returns ``(rays, lines)``: the cone is ``cone(rays) + span(lines)``, the
    rays being the extreme rays modulo the lineality space. All output vectors
    are primitive.
    """
    lines: list[Vector] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[Vector] = []
    seen: list[Vector] = []
    for a in inequalities:
        a = primitive(tuple(a))
        if not any(a) or a in seen:
            continue
        k = next((i for i, l in enumerate(lines) if dot(a, l)), None)
        if k is not None:
            l0 = lines.pop(k)
            v0 = dot(a, l0)
            if v0 < 0:
                l0, v0 = _neg(l0), -v0
            lines = [_combine(v0, l, -dot(a, l), l0) for l in lines]
            rays = [_combine(v0, r, -dot(a, r), l0) for r in rays] + [l0]
        else:
            vals = [dot(a, r) for r in rays]
            pos = [r for r, s in zip(rays, vals) if s > 0]
            neg = [(r, s) for r, s in zip(rays, vals) if s < 0]
            new = pos + [r for r, s in zip(rays, vals) if s == 0]
            if pos and neg:
                target = dim - len(lines) - 2
                tight = {r: frozenset(i for i, b in enumerate(seen) if dot(b, r) == 0)
                         for r in rays}
                for p in pos:
                    sp = dot(a, p)
                    for q, sq in neg:
                        common = tight[p] & tight[q]
                        if (len(common) < target
                                or rank_of([seen[i] for i in common], dim) != target):
                            continue
                        new.append(_combine(sp, q, -sq, p))
            rays = list(dict.fromkeys(new))
        seen.append(a)
    return rays, lines


def _unique_primitive(vectors: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    out = []
    for v in vectors:
        v = primitive(tuple(int(x) for x in v))
        if any(v) and v not in out:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Cone:
    """The cone ``{sum c_i g_i : c_i >= 0}`` in ``R^ambient_rank``.

    Generators are normalized to primitive vectors; zero and duplicate
    generators are dropped. Equality is equality of point sets.
    """

    generators: tuple[Vector, ...]
    ambient_rank: int

    def __init__(self, generators: Iterable[Sequence[int]], ambient_rank: Optional[int] = None):
        gens = _unique_primitive(generators)
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient rank is required for the zero cone")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise ValueError("generator length differs from the ambient rank")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "ambient_rank", ambient_rank)

    @cached_property
    def _dual_description(self) -> tuple[list[Vector], list[Vector]]:
        return double_description(self.generators, self.ambient_rank)

    @property
    def facet_normals(self) -> list[Vector]:
        """Inward facet normals, modulo the orthogonal complement of the span."""
        return self._dual_description[0]

    @property
    def equations(self) -> list[Vector]:
        """Basis of the functionals vanishing on the cone."""
        return self._dual_description[1]

    @cached_property
    def inequalities(self) -> tuple[Vector, ...]:
        """Generators of the dual cone: ``v`` is in the cone iff all are >= 0 on ``v``."""
        rays, lines = self._dual_description
        return tuple(rays) + tuple(lines) + tuple(_neg(l) for l in lines)

    def dual(self) -> Cone:
        return Cone(self.inequalities, self.ambient_rank)

    @cached_property
    def dim(self) -> int:
        return rank_of(self.generators, self.ambient_rank)

    def is_strongly_convex(self) -> bool:
        return rank_of(self.inequalities, self.ambient_rank) == self.ambient_rank

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_rank:
            raise ValueError("vector has the wrong length")
        return all(dot(h, v) >= 0 for h in self.inequalities)

    def contains_cone(self, other: Cone) -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank and self.contains_cone(other)
                and other.contains_cone(self))

    def __hash__(self):
        return hash((self.ambient_rank, self.dim))

    def __repr__(self) -> str:
        return f"Cone({[list(g) for g in self.generators]}, ambient_rank={self.ambient_rank})"

    @cached_property
    def rays(self) -> tuple[Vector, ...]:
        """Extreme rays (primitive), in generator order. Needs a strongly convex cone."""
        if not self.is_strongly_convex():
            raise ValueError("extreme rays are only defined for strongly convex cones")
        n = self.ambient_rank
        ineqs = self.inequalities
        return tuple(g for g in self.generators
                     if rank_of([h for h in ineqs if dot(h, g) == 0], n) == n - 1)

    def relative_interior_point(self) -> Vector:
        """Sum of the generators; lies in the relative interior."""
        out = [0] * self.ambient_rank
        for g in self.generators:
            out = [a + b for a, b in zip(out, g)]
        return tuple(out)

    def face_of(self, m: Sequence[int]) -> Cone:
        """The face cut out by a functional ``m`` that is nonnegative on the cone."""
        vals = [dot(m, g) for g in self.generators]
        if any(v < 0 for v in vals):
            raise ValueError(f"functional {tuple(m)} is not in the dual cone")
        return Cone([g for g, v in zip(self.generators, vals) if v == 0], self.ambient_rank)

    def face_ray_sets(self) -> list[frozenset[int]]:
        """All faces, as sets of indices into :attr:`rays`, smallest first."""
        if not self.is_strongly_convex():
            raise ValueError("faces are enumerated for strongly convex cones only")
        rays = self.rays
        top = frozenset(range(len(rays)))
        cuts = [frozenset(i for i, r in enumerate(rays) if dot(h, r) == 0)
                for h in self.facet_normals]
        found = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for f in frontier:
                for c in cuts:
                    g = f & c
                    if g not in found:
                        found.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def faces(self) -> list[Cone]:
        """All faces including ``{0}`` and the cone itself, each listed once."""
        rays = self.rays
        return [Cone([rays[i] for i in sorted(s)], self.ambient_rank) for s in self.face_ray_sets()]

    def minimal_face_containing(self, other: Cone) -> Cone:
        normals = [h for h in self.inequalities
                   if all(dot(h, g) == 0 for g in other.generators)]
        m = [sum(col) for col in zip(*normals)] if normals else [0] * self.ambient_rank
        return self.face_of(m)

    def is_face(self, face: Cone) -> bool:
        """True iff ``face`` is a face of this cone."""
        if not self.contains_cone(face):
            return False
        return face.contains_cone(self.minimal_face_containing(face))


def dual_cone(C: Cone) -> Cone:
    return C.dual()


def face_of(C: Cone, m: Sequence[int]) -> Cone:
    return C.face_of(m)


def faces(C: Cone) -> list[Cone]:
    return C.faces()


def is_face(F: Cone, C: Cone) -> bool:
    return C.is_face(F)


def intersect(C1: Cone, C2: Cone) -> Cone:
    if C1.ambient_rank != C2.ambient_rank:
        raise ValueError("ambient ranks differ")
    rays, lines = double_description(C1.inequalities + C2.inequalities, C1.ambient_rank)
    return Cone(rays + lines + [_neg(l) for l in lines], C1.ambient_rank)


def relative_interior_point(C: Cone) -> Vector:
    return C.relative_interior_point()


def strict_sign_solution(lattice: Sequence[Sequence[int]], zero_idx: Iterable[int],
                         pos_idx: Iterable[int], dim: Optional[int] = None) -> Optional[Vector]:
    """Lattice vector vanishing on ``zero_idx`` and strictly positive on ``pos_idx``.

    ``lattice`` lists generators of a sublattice of ``Z^dim``. Returns None when
    no such vector exists. Strictness is invariant under positive scaling, so
    rational strict feasibility decides the integer question.
    """
    zero_idx, pos_idx = sorted(set(zero_idx)), sorted(set(pos_idx))
    if set(zero_idx) & set(pos_idx):
        raise ValueError("zero and positive index sets overlap")
    if dim is None:
        if not lattice:
            raise ValueError("dimension is required for an empty generator list")
        dim = len(lattice[0])
    basis = hermite_normal_form(lattice, dim)
    if not pos_idx:
        return (0,) * dim
    if not basis:
        return None
    B = IntMatrix.from_columns(basis, dim)  # x = B y
    K = kernel_basis(B.select_rows(zero_idx)) if zero_idx else \
        [tuple(int(i == j) for j in range(len(basis))) for i in range(len(basis))]
    if not K:
        return None
    BK = B @ IntMatrix.from_columns(K, len(basis))  # x = BK z
    rows = [BK.row(i) for i in pos_idx]
    if any(not any(r) for r in rows):
        return None
    C = Cone(rows, len(K))
    if not C.is_strongly_convex():
        return None
    # any interior point of the dual cone is strictly positive on every row
    z = primitive(C.dual().relative_interior_point())
    x = BK @ z
    assert all(x[i] == 0 for i in zero_idx) and all(x[i] > 0 for i in pos_idx)
    return x


def lattice_points(A: Sequence[Sequence[int]], b: Sequence[int], dim: int) -> list[Vector]:
    """Integer points of the bounded polyhedron ``{x : A x >= b}``, sorted.

    Vertices are found exactly from all full-rank square subsystems; the
    bounding box they span is scanned.
    """
    A = [tuple(r) for r in A]
    if dim == 0:
        return [()] if all(bi <= 0 for bi in b) else []
    if Cone(A, dim).dual().generators:
        raise ValueError("polyhedron is unbounded")
    lo = [None] * dim
    hi = [None] * dim
    for rows in combinations(range(len(A)), dim):
        M = IntMatrix.from_rows([A[i] for i in rows], dim)
        if M.rank < dim:
            continue
        x = solve_rational(M, [b[i] for i in rows])
        if any(sum(Fraction(a) * xi for a, xi in zip(A[k], x)) < b[k] for k in range(len(A))):
            continue
        for j in range(dim):
            lo[j] = x[j] if lo[j] is None else min(lo[j], x[j])
            hi[j] = x[j] if hi[j] is None else max(hi[j], x[j])
    if lo[0] is None:
        return []
    ranges = [range(ceil(l), floor(h) + 1) for l, h in zip(lo, hi)]
    return [p for p in product(*ranges) if all(dot(a, p) >= bi for a, bi in zip(A, b))]


def _simplicial_pieces(rays: Sequence[Vector], n: int) -> list[list[Vector]]:
    """Pulling triangulation of a strongly convex cone given by its extreme rays."""
    d = rank_of(rays, n)
    if len(rays) == d:
        return [list(rays)]
    C = Cone(rays, n)
    R = list(C.rays)
    out = []
    for s in C.face_ray_sets():
        face = [R[i] for i in sorted(s)]
        if 0 not in s and rank_of(face, n) == d - 1:
            out.extend([R[0]] + piece for piece in _simplicial_pieces(face, n))
    return out


def _parallelepiped_points(G: Sequence[Vector]) -> list[Vector]:
    """Lattice points ``sum t_i g_i`` with ``0 <= t_i < 1`` for a basis ``G`` of ``Q^d``."""
    d = len(G)
    M = IntMatrix.from_columns(G, d)
    grp = QuotientGroup(M)
    pts = []
    for coords in product(*(range(m) for m in grp.presentation.torsion)):
        t = solve_rational(M, grp.lift(coords))
        frac = [x - floor(x) for x in t]
        pts.append(tuple(int(sum(f * g[i] for f, g in zip(frac, G))) for i in range(d)))
    return pts


def _pointed_hilbert_basis(C: Cone) -> list[Vector]:
    n = C.ambient_rank
    rays = list(C.rays)
    cand = set(rays)
    for piece in _simplicial_pieces(rays, n):
        cand.update(p for p in _parallelepiped_points(piece) if any(p))
    return [h for h in cand
            if not any(c != h and C.contains(tuple(a - b for a, b in zip(h, c))) for c in cand)]


def hilbert_basis(C: Cone) -> list[Vector]:
    """Minimal generators of the monoid ``C meet Z^n``, sorted.

    The cone is first restricted to the saturated lattice of its span and
    its lineality lattice is split off by unimodular changes of basis. When
    the lineality space is nonzero, a basis of its lattice and the negatives
    are included, so the result still generates the monoid.
    """
    n = C.ambient_rank
    span = saturation(C.generators, n)
    k = len(span)
    if k == 0:
        return []
    U = unimodular_completion(span, n)
    B = U.select_columns(range(n - k, n))
    Uinv = unimodular_inverse(U)
    gens = [(Uinv @ g)[n - k:] for g in C.generators]
    Cy = Cone(gens, k)
    ineq = Cy.inequalities
    lin = kernel_basis(IntMatrix.from_rows(ineq, k) if ineq else IntMatrix.zeros(0, k))
    p = k - len(lin)
    V = unimodular_completion(lin, k)
    Vinv = unimodular_inverse(V)
    out = []
    if p:
        pointed = Cone([(Vinv @ y)[:p] for y in gens], p)
        for h in _pointed_hilbert_basis(pointed):
            out.append(B @ (V @ (h + (0,) * len(lin))))
    for l in lin:
        x = B @ l
        out.extend([x, _neg(x)])
    return sorted(set(out))
