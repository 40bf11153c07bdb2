"""Fans in a lattice ``Z^rank`` and maps between them.

A fan keeps an explicit, ordered list of primitive ray generators; every cone
is the tuple of (sorted) indices of its rays. Divisor vectors elsewhere in the
package are indexed by this ray order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .errors import FanError
from .polyhedral import Cone, intersect
from .zlinalg import IntMatrix, Vector, primitive, rank_of

ConeIndex = tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    """A finite fan.

    Attributes:
        rank: rank of the lattice N.
        rays: primitive ray generators, in canonical order.
        max_cones: inclusion-maximal cones as sorted ray-index tuples.
        cones: all cones (face closure), sorted by size then indices; the
            zero cone ``()`` comes first.
    """

    rank: int
    rays: tuple[Vector, ...]
    max_cones: tuple[ConeIndex, ...]
    cones: tuple[ConeIndex, ...]

    @classmethod
    def from_rays(cls, rank: int, rays: Sequence[Sequence[int]],
                  max_cones: Iterable[Iterable[int]]) -> Fan:
        """Validate and face-complete a fan given by rays and cones over them."""
        norm = []
        for v in rays:
            v = tuple(int(x) for x in v)
            if len(v) != rank:
                raise FanError(f"ray {v} does not have length {rank}")
            if not any(v):
                raise FanError("zero ray")
            v = primitive(v)
            if v in norm:
                raise FanError(f"ray {v} listed twice")
            norm.append(v)
        inputs = []
        for c in max_cones:
            c = tuple(sorted(set(int(i) for i in c)))
            if any(i < 0 or i >= len(norm) for i in c):
                raise FanError(f"cone {list(c)} refers to a missing ray")
            if c not in inputs:
                inputs.append(c)
        if not inputs:
            inputs = [()]
        cones = {c: Cone([norm[i] for i in c], rank) for c in inputs}
        face_sets = {}
        for c, C in cones.items():
            if not C.is_strongly_convex():
                raise FanError(f"cone {list(c)} is not strongly convex")
            if len(C.rays) != len(c):
                extra = [norm[i] for i in c if norm[i] not in C.rays]
                raise FanError(f"cone {list(c)}: {extra[0]} is not an extreme ray")
            face_sets[c] = {frozenset(c[i] for i in s) for s in C.face_ray_sets()}
        for a in range(len(inputs)):
            for b in range(a + 1, len(inputs)):
                ca, cb = inputs[a], inputs[b]
                common = frozenset(ca) & frozenset(cb)
                ok = common in face_sets[ca] and common in face_sets[cb]
                if ok:
                    meet = Cone([norm[i] for i in sorted(common)], rank)
                    ok = meet.contains_cone(intersect(cones[ca], cones[cb]))
                if not ok:
                    raise FanError(f"cones {list(ca)} and {list(cb)} do not meet in a common face")
        used = set().union(*inputs)
        if len(used) != len(norm):
            raise FanError(f"rays {sorted(set(range(len(norm))) - used)} belong to no cone")
        maximal = tuple(c for c in inputs
                        if not any(c != d and set(c) <= set(d) for d in inputs))
        everything = set().union(*face_sets.values())
        all_cones = tuple(sorted((tuple(sorted(s)) for s in everything),
                                 key=lambda s: (len(s), s)))
        return cls(rank, tuple(norm), maximal, all_cones)

    # --- queries -------------------------------------------------------------

    @cached_property
    def _cone_set(self) -> frozenset[ConeIndex]:
        return frozenset(self.cones)

    def __len__(self) -> int:
        return len(self.cones)

    def has_cone(self, idx: Iterable[int]) -> bool:
        return tuple(sorted(idx)) in self._cone_set

    def cone(self, idx: Iterable[int]) -> Cone:
        return Cone([self.rays[i] for i in sorted(idx)], self.rank)

    def ray_index(self, v: Sequence[int]) -> int:
        return self.rays.index(primitive(tuple(v)))

    @cached_property
    def ray_matrix(self) -> IntMatrix:
        """Rows are the ray generators: the matrix of ``div: M -> Z^rays``."""
        return IntMatrix.from_rows(self.rays, self.rank)

    def cone_dim(self, idx: Iterable[int]) -> int:
        return rank_of([self.rays[i] for i in idx], self.rank)

    def rays_of(self, idx: Iterable[int]) -> list[Vector]:
        return [self.rays[i] for i in idx]

    def is_complete(self) -> bool:
        """Support equals ``R^rank`` (facet pairing of full-dimensional maximal cones)."""
        if self.rank == 0:
            return True
        if any(self.cone_dim(c) < self.rank for c in self.max_cones):
            return False
        count: dict[frozenset, int] = {}
        for c in self.max_cones:
            C = self.cone(c)
            for s in C.face_ray_sets():
                face = frozenset(c[i] for i in s)
                if self.cone_dim(face) == self.rank - 1:
                    count[face] = count.get(face, 0) + 1
        return all(v == 2 for v in count.values())

    def enclosing_face_fan(self) -> Optional[Cone]:
        """The hull of the support, if the fan is a subfan of its face fan."""
        hull = Cone(self.rays, self.rank)
        if not hull.is_strongly_convex():
            return None
        if all(hull.is_face(self.cone(c)) for c in self.max_cones):
            return hull
        return None

    def locate(self, v: Sequence[int]) -> ConeIndex:
        """The cone whose relative interior contains ``v``."""
        hits = [c for c in self.cones if self.cone(c).contains(v)]
        if not hits:
            raise FanError(f"vector {tuple(v)} is outside the support of the fan")
        return min(hits, key=len)

    def smallest_containing_cone(self, v: Sequence[int]) -> Cone:
        return self.cone(self.locate(v))


def new_fan(rank: int, cones: Iterable[Union[Cone, Sequence[Sequence[int]]]]) -> Fan:
    """Build a fan from cones given by generators.

    Rays are extracted in order of first appearance; non-extreme generators
    are dropped.
    """
    rays: list[Vector] = []
    idx = []
    for c in cones:
        C = c if isinstance(c, Cone) else Cone(c, rank)
        if C.ambient_rank != rank:
            raise FanError("cone lives in a lattice of the wrong rank")
        if not C.is_strongly_convex():
            raise FanError(f"{C} is not strongly convex")
        ix = []
        for r in C.rays:
            if r not in rays:
                rays.append(r)
            ix.append(rays.index(r))
        idx.append(ix)
    return Fan.from_rays(rank, rays, idx)


def face_fan(C: Cone, proper_only: bool = False) -> Fan:
    """The fan of all faces of a strongly convex cone (optionally without the cone itself)."""
    rays = list(C.rays)
    sets = C.face_ray_sets()
    if proper_only:
        top = frozenset(range(len(rays)))
        sets = [s for s in sets if s != top]
        sets = [s for s in sets if not any(s < t for t in sets)]
    else:
        sets = sets[-1:]
    return Fan.from_rays(C.ambient_rank, rays, [sorted(s) for s in sets])


@dataclass(frozen=True)
class FanMap:
    """A lattice map ``Q: source.rank -> target.rank`` mapping cones into cones."""

    source: Fan
    target: Fan
    matrix: IntMatrix

    def image(self, idx: Iterable[int]) -> Cone:
        return Cone([self.matrix @ self.source.rays[i] for i in idx], self.target.rank)

    def image_cone_index(self, idx: Iterable[int]) -> Optional[ConeIndex]:
        """The target cone equal to the image of a source cone, if there is one."""
        img = self.image(idx)
        try:
            hit = self.target.locate(img.relative_interior_point())
        except FanError:
            return None
        return hit if img == self.target.cone(hit) else None


def new_fan_map(Q: IntMatrix, source: Fan, target: Fan) -> FanMap:
    if Q.shape != (target.rank, source.rank):
        raise FanError(f"matrix shape {Q.shape} does not match ranks "
                       f"{source.rank} -> {target.rank}")
    fm = FanMap(source, target, Q)
    for c in source.max_cones:
        img = fm.image(c)
        if not any(target.cone(t).contains_cone(img) for t in target.max_cones):
            raise FanError(f"source cone {list(c)} maps into no cone of the target fan")
    return fm
