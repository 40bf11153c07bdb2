"""Standard small fans used throughout the tests, demos and ``torq selftest``."""
from __future__ import annotations

from itertools import product

from .fan import Fan


def projective_line() -> Fan:
    return Fan.from_rays(1, [(1,), (-1,)], [[0], [1]])


def projective_plane() -> Fan:
    return Fan.from_rays(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]])


def hirzebruch(a: int) -> Fan:
    """Rays e1, e2, -e1 + a e2, -e2 in this order."""
    return Fan.from_rays(2, [(1, 0), (0, 1), (-1, a), (0, -1)],
                         [[0, 1], [1, 2], [2, 3], [0, 3]])


def a2_mod_mu2() -> Fan:
    """The affine quotient A^2 / mu_2: one cone spanned by (1, 0), (1, 2)."""
    return Fan.from_rays(2, [(1, 0), (1, 2)], [[0, 1]])


def square_cone() -> Fan:
    """Cone over the unit square at height one: a non-simplicial affine chart."""
    return Fan.from_rays(3, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)], [[0, 1, 2, 3]])


def p1_times_p1() -> Fan:
    return Fan.from_rays(2, [(1, 0), (-1, 0), (0, 1), (0, -1)],
                         [[0, 2], [0, 3], [1, 2], [1, 3]])


def corpus() -> dict[str, Fan]:
    """Named fixture fans."""
    return {
        "P1": projective_line(),
        "P2": projective_plane(),
        "Hz1": hirzebruch(1),
        "Hz2": hirzebruch(2),
        "Amu2": a2_mod_mu2(),
        "Qcone": square_cone(),
    }


def twisted_cube() -> Fan:
    """Complete fan over the faces of a cube with the vertex (1,1,1) moved to (1,2,3).

    Every Cartier divisor on it is principal, so it lacks enough Cartier divisors.
    """
    corners = list(product((1, -1), repeat=3))
    rays = [(1, 2, 3) if v == (1, 1, 1) else v for v in corners]
    faces = [[k for k, v in enumerate(corners) if v[i] == s] for i in range(3) for s in (1, -1)]
    return Fan.from_rays(3, rays, faces)
