import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torq.errors import FanError
from torq.fan import Fan, face_fan, new_fan, new_fan_map
from torq.fixtures import corpus, p1_times_p1, projective_line, square_cone
from torq.polyhedral import Cone
from torq.zlinalg import IntMatrix, primitive

CONE_COUNTS = {"P1": 3, "P2": 7, "Hz1": 9, "Hz2": 9, "Amu2": 4, "Qcone": 10}
COMPLETE = {"P1": True, "P2": True, "Hz1": True, "Hz2": True, "Amu2": False, "Qcone": False}


@pytest.mark.parametrize("name", sorted(CONE_COUNTS))
def test_fixture_cone_counts(name):
    F = corpus()[name]
    assert len(F) == CONE_COUNTS[name]
    assert F.cones[0] == ()
    assert F.is_complete() == COMPLETE[name]


def test_product_fan():
    F = p1_times_p1()
    assert len(F) == 9 and F.is_complete()


def test_overlapping_cones_are_rejected():
    with pytest.raises(FanError, match=r"cones \[0, 1\] and \[1, 2\]"):
        Fan.from_rays(2, [(1, 0), (0, 1), (1, 1)], [[0, 1], [1, 2]])


@pytest.mark.parametrize("rays, cones, msg", [
    ([(1, 0), (-1, 0)], [[0, 1]], "not strongly convex"),
    ([(1, 0), (2, 0)], [[0], [1]], "listed twice"),
    ([(1, 0), (0, 1)], [[0]], "belong to no cone"),
    ([(1, 0), (1, 1), (0, 1)], [[0, 1, 2]], "not an extreme ray"),
    ([(0, 0)], [[0]], "zero ray"),
    ([(1, 0)], [[3]], "missing ray"),
])
def test_invalid_fans(rays, cones, msg):
    with pytest.raises(FanError, match=msg):
        Fan.from_rays(2, rays, cones)


def test_rays_are_normalized_in_input_order():
    F = Fan.from_rays(2, [(2, 0), (0, 3)], [[0, 1]])
    assert F.rays == ((1, 0), (0, 1))
    assert F.ray_matrix == IntMatrix.from_rows([(1, 0), (0, 1)])


def test_locate():
    F = square_cone()
    assert F.locate((1, 1, 3)) == (0, 1, 2, 3)
    assert F.locate((0, 0, 2)) == (0,)
    assert F.locate((0, 0, 0)) == ()
    with pytest.raises(FanError, match="outside the support"):
        F.locate((0, 0, -1))


def test_new_fan_and_face_fan():
    F = new_fan(2, [[(1, 0), (0, 1)], Cone([(0, 1), (-1, -1)])])
    assert F.rays == ((1, 0), (0, 1), (-1, -1))
    assert len(F) == 6
    G = face_fan(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)]), proper_only=True)
    assert len(G) == 7 and len(G.max_cones) == 3


def test_enclosing_face_fan():
    assert square_cone().enclosing_face_fan() is not None
    assert projective_line().enclosing_face_fan() is None


def test_fan_map_checks():
    P1 = projective_line()
    src = Fan.from_rays(2, [(1, 0), (0, 1)], [[0], [1]])
    fm = new_fan_map(IntMatrix.from_rows([(1, -1)]), src, P1)
    assert fm.image_cone_index((0,)) == (0,)
    with pytest.raises(FanError, match="shape"):
        new_fan_map(IntMatrix.from_rows([(1, -1, 0)]), src, P1)
    whole = Fan.from_rays(2, [(1, 0), (0, 1)], [[0, 1]])
    with pytest.raises(FanError, match="maps into no cone"):
        new_fan_map(IntMatrix.from_rows([(1, -1)]), whole, P1)


@st.composite
def complete_plane_fans(draw):
    """Complete fans in Z^2 from rays sorted by angle with gaps below pi."""
    while True:
        k = draw(st.integers(3, 7))
        vs = draw(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4))
                           .filter(any), min_size=k, max_size=k))
        rays = sorted({primitive(v) for v in vs}, key=lambda v: math.atan2(v[1], v[0]))
        if len(rays) < 3:
            continue
        angles = [math.atan2(v[1], v[0]) for v in rays]
        gaps = [(angles[(i + 1) % len(rays)] - angles[i]) % (2 * math.pi) for i in range(len(rays))]
        if max(gaps) < math.pi - 1e-9:
            cones = [[i, (i + 1) % len(rays)] for i in range(len(rays))]
            return Fan.from_rays(2, rays, cones)


@given(complete_plane_fans(), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_complete_plane_fans(F, v):
    assert F.is_complete()
    assert len(F) == 1 + 2 * len(F.rays)
    c = F.locate(v)
    assert F.cone(c).contains(v)
    for d in F.cones:
        if len(d) < len(c) and set(d) <= set(c):
            assert not F.cone(d).contains(v)


@given(complete_plane_fans())
def test_dropping_a_cone_breaks_completeness(F):
    G = Fan.from_rays(2, F.rays, F.max_cones[1:])
    assert not G.is_complete()
