import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torq.divisor import ClassGroup, WeilDivisor, div_char, effective_with_support
from torq.errors import PreconditionError, TriangleError
from torq.fan import Fan, new_fan_map
from torq.fixtures import (a2_mod_mu2, corpus, hirzebruch, p1_times_p1, projective_line,
                           projective_plane, square_cone, twisted_cube)
from torq.presentation import (Triangle, ample_triangle, build_presentation, canonical_triangle,
                               cartier_preimage, cartierization, cartierization_index,
                               check_presentation, classify, cox_triangle, kajiwara_triangle,
                               new_triangle, pushforward, random_triangle, random_unimodular,
                               snake_class, strict_transform, weight_group)
from torq.zlinalg import AbelianGroupPresentation, IntMatrix, kernel_basis

from . import oracles

NAMES = sorted(corpus())
DEGENERATE = Fan.from_rays(2, [(1, 0)], [[0]])


def test_cox_triangle_of_p1_is_valid():
    P1 = projective_line()
    T = new_triangle(P1, IntMatrix.from_rows([(1,), (-1,)]), IntMatrix.identity(2))
    assert T == cox_triangle(P1)
    assert T.Mhat_rank == 2


@pytest.mark.parametrize("phi1, phi2, axiom", [
    ([(1,), (-1,)], [(1, 0), (0, 0)], "composition"),
    ([(1,), (-1,)], [(1, 0, 0), (0, 1, 0)], "dimensions"),
    ([(1,), (0,)], [(1, 0), (-1, 0)], "effective"),
])
def test_triangle_axioms(phi1, phi2, axiom):
    P1 = projective_line()
    with pytest.raises(TriangleError) as info:
        Triangle(P1, IntMatrix.from_rows(phi1), IntMatrix.from_rows(phi2))
    assert info.value.axiom == axiom


def test_non_injective_phi1():
    with pytest.raises(TriangleError) as info:
        Triangle(DEGENERATE, IntMatrix.from_rows([(1, 0)]), IntMatrix.identity(1))
    assert info.value.axiom == "injective"


def test_kajiwara_equals_cox_on_smooth_fans():
    for F in (projective_plane(), hirzebruch(1), p1_times_p1()):
        assert kajiwara_triangle(F) == cox_triangle(F)


def test_p1_presentation():
    qp = build_presentation(cox_triangle(projective_line()))
    assert qp.source.rays == ((1, 0), (0, 1))
    assert len(qp.source) == 3
    assert qp.Q == IntMatrix.from_rows([(1, -1)])
    assert kernel_basis(qp.Q) == [(1, 1)]
    assert qp.ray_bijection == (0, 1)


def test_square_cone_presentation_has_sixteen_cones():
    qp = build_presentation(cox_triangle(square_cone()))
    assert len(qp.source) == 16 and len(qp.target) == 10
    assert check_presentation(qp.fan_map).verdict


def test_projective_plane_presentation():
    qp = build_presentation(cox_triangle(projective_plane()))
    assert len(qp.source) == 7
    assert all(check_presentation(qp.fan_map).conditions().values())


def test_ample_presentation_of_p1():
    P1 = projective_line()
    T = ample_triangle(P1, WeilDivisor(P1, (0, 1)))
    assert T.Mhat_rank == 2
    qp = build_presentation(T)
    assert qp.Q == IntMatrix.from_rows([(1, 0)])
    assert qp.source.rays == ((1, 0), (-1, 1))
    assert qp.sigma_bar.is_strongly_convex()


def test_check_presentation_negative_cases():
    ray = Fan.from_rays(1, [(1,)], [[0]])
    r = check_presentation(new_fan_map(IntMatrix.from_rows([(2,)]), ray, ray))
    assert r.finite_cokernel and r.face_fan is not None and r.max_bijective
    assert not r.primitive_images and not r.verdict
    P2 = projective_plane()
    r = check_presentation(new_fan_map(IntMatrix.identity(2), P2, P2))
    assert r.face_fan is None and not r.verdict
    assert r.max_bijective and r.ray_bijective and r.primitive_images


def test_strict_transform_examples():
    P1 = projective_line()
    qp = build_presentation(cox_triangle(P1))
    assert strict_transform(qp, WeilDivisor(P1, (1, 0))).coeffs == (1, 0)
    m = (1,)
    lhs = strict_transform(qp, div_char(P1, m))
    assert lhs == div_char(qp.source, qp.triangle.phi1 @ m)
    with pytest.raises(PreconditionError):
        strict_transform(qp, WeilDivisor(projective_plane(), (0, 0, 0)))


def test_builder_preconditions():
    with pytest.raises(PreconditionError, match="not nondegenerate"):
        cox_triangle(DEGENERATE)
    with pytest.raises(PreconditionError, match="not enough Cartier divisors"):
        kajiwara_triangle(twisted_cube())
    P1 = projective_line()
    with pytest.raises(PreconditionError, match="divisor not ample"):
        ample_triangle(P1, WeilDivisor(P1, (0, 0)))
    with pytest.raises(PreconditionError, match="not complete"):
        ample_triangle(a2_mod_mu2(), WeilDivisor(a2_mod_mu2(), (1, 0)))
    P112 = Fan.from_rays(2, [(1, 0), (0, 1), (-1, -2)], [[0, 1], [1, 2], [2, 0]])
    with pytest.raises(PreconditionError, match="not Cartier"):
        ample_triangle(P112, WeilDivisor(P112, (1, 0, 0)))
    assert ample_triangle(P112, WeilDivisor(P112, (0, 2, 0))).Mhat_rank == 3


def test_canonical_triangle_of_degenerate_fan():
    T = canonical_triangle(DEGENERATE)
    assert T.Mhat_rank == 2
    qp = build_presentation(T)
    assert check_presentation(qp.fan_map).verdict
    assert weight_group(T).presentation == AbelianGroupPresentation(0)


def test_weight_groups_and_snake_map():
    P1 = projective_line()
    T = cox_triangle(P1)
    W = weight_group(T)
    assert W.presentation == AbelianGroupPresentation(1)
    Cl = ClassGroup(P1)
    # the snake map sends the generator of W to a generator of Cl
    assert [abs(x) for x in W.snake_images()[0]] == [1]
    assert snake_class(T, (1, 0)) == Cl.class_of((1, 0))
    W2 = weight_group(cox_triangle(a2_mod_mu2()))
    assert W2.presentation == AbelianGroupPresentation(0, (2,))


def test_cartierization():
    P2 = projective_plane()
    assert cartierization_index(cox_triangle(P2)) == 1
    assert cartierization(cox_triangle(P2)).phi2.rank == 3
    T = cox_triangle(a2_mod_mu2())
    C = cartierization(T)
    assert cartierization_index(T) == 2
    assert cartier_preimage(T) == [(1, 1), (0, 2)]
    assert classify(C).principal
    assert weight_group(C).presentation.is_trivial
    with pytest.raises(TriangleError):
        cartierization(cox_triangle(twisted_cube()))
    # an affine chart always has enough Cartier divisors: the result is the
    # trivial presentation
    Q = square_cone()
    C = cartierization(cox_triangle(Q))
    assert C.Mhat_rank == 3 and weight_group(C).presentation.is_trivial
    assert kajiwara_triangle(Q).Mhat_rank == 3


@pytest.mark.parametrize("name, expected", [
    ("P1", (True, True, True)), ("P2", (True, True, True)), ("Hz1", (True, True, True)),
    ("Hz2", (True, True, True)), ("Amu2", (True, True, False)), ("Qcone", (True, False, False)),
])
def test_classification(name, expected):
    c = classify(cox_triangle(corpus()[name]))
    assert (c.good, c.geometric, c.principal) == expected


def test_random_unimodular():
    rng = random.Random(5)
    for n in range(1, 6):
        U, Ui = random_unimodular(n, rng)
        assert U @ Ui == IntMatrix.identity(n)
        assert abs(U.det()) == 1


@pytest.mark.parametrize("name", NAMES)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_random_triangles_round_trip(name, seed):
    F = corpus()[name]
    rng = random.Random(seed)
    T = random_triangle(F, rng)
    qp = build_presentation(T)
    assert check_presentation(qp.fan_map).verdict
    for _ in range(5):
        D = WeilDivisor(F, [rng.randint(-6, 6) for _ in F.rays])
        Dh = strict_transform(qp, D)
        assert pushforward(qp, Dh) == D
        assert strict_transform(qp, pushforward(qp, Dh)) == Dh
    c = classify(T)
    assert c.good and (c.geometric or not c.principal)
    W = weight_group(T)
    for m in ([1] * F.rank, [rng.randint(-3, 3) for _ in range(F.rank)]):
        assert not any(W.snake_class(T.phi1 @ m))
        assert W.is_zero(T.phi1 @ m)
    try:
        C = cartierization(T)
    except TriangleError:
        return
    assert classify(C).principal


@pytest.mark.parametrize("name", NAMES)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_effectivity_on_all_cones(name, seed):
    """Checking maximal cones is enough: every cone of the fan then admits an
    effective divisor in the image with the complementary support."""
    F = corpus()[name]
    T = random_triangle(F, random.Random(seed), max_extra=1)
    cols = T.phi2.columns()
    for c in F.cones:
        D = effective_with_support(F, c, cols)
        assert D is not None
        assert all((D.coeffs[i] == 0) == (i in c) for i in range(len(F.rays)))


def test_effective_divisors_brute_force():
    """The divisor found for each maximal cone agrees with a small exhaustive search."""
    P2 = projective_plane()
    T = cox_triangle(P2)
    for c, D in zip(P2.max_cones, T.effective):
        assert all((D[i] == 0) == (i in c) for i in range(3))
        found = [x for x in oracles.box(3, 0, 2)
                 if all((x[i] == 0) == (i in c) for i in range(3))]
        assert found
