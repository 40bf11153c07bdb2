import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torq.coordring import (MonomialIdeal, irrelevant_generators, irrelevant_membership,
                            is_saturated, saturated_covering, section_monoid, veronese_degrees,
                            veronese_index, weight_divisor, weight_module_member)
from torq.divisor import WeilDivisor, div_char
from torq.errors import PreconditionError
from torq.fixtures import (a2_mod_mu2, corpus, hirzebruch, p1_times_p1, projective_line,
                           projective_plane, square_cone)
from torq.presentation import (ample_triangle, build_presentation, classify, cox_triangle,
                               new_triangle, random_triangle)
from torq.sheafcalc import sections_basis
from torq.zlinalg import IntMatrix

from . import oracles

NAMES = sorted(corpus())


def cox_ring(F):
    return section_monoid(build_presentation(cox_triangle(F)))


def test_projective_plane_ring_is_polynomial():
    R = cox_ring(projective_plane())
    assert sorted(R.section_cone.generators) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert R.hilbert_basis == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    d = R.degrees
    assert len(set(d)) == 1 and abs(d[0][0]) == 1
    # the degree is additive and agrees with the total degree up to sign
    assert R.degree((2, 1, 0)) == tuple(3 * x for x in d[0])


def test_affine_chart_as_its_own_presentation():
    F = a2_mod_mu2()
    T = new_triangle(F, IntMatrix.identity(2), IntMatrix.from_rows(F.rays))
    R = section_monoid(build_presentation(T))
    assert R.hilbert_basis == ((0, 1), (1, 0), (2, -1))
    assert R.degrees == ((), (), ())


def test_ample_presentation_of_p1_ring():
    P1 = projective_line()
    R = section_monoid(build_presentation(ample_triangle(P1, WeilDivisor(P1, (0, 1)))))
    assert R.hilbert_basis == ((0, 1), (1, 1))


@pytest.mark.parametrize("name", NAMES)
def test_hilbert_basis_generates_sample_box(name):
    R = cox_ring(corpus()[name])
    H = list(R.hilbert_basis)
    for h in H:
        assert R.in_monoid(h)
    for p in oracles.box(R.rank, 0 if R.rank > 3 else -2, 2):
        if R.in_monoid(p):
            assert oracles.representable(p, H, R.in_monoid)


def test_irrelevant_membership_examples():
    R = cox_ring(projective_line())
    assert irrelevant_membership(R, (1, 0))
    assert not irrelevant_membership(R, (0, 0))
    Q = cox_ring(square_cone())
    assert irrelevant_membership(Q, (0, 0, 0, 0))
    with pytest.raises(PreconditionError):
        irrelevant_membership(R, (-1, 0))


@pytest.mark.parametrize("name", NAMES)
def test_irrelevant_ideal_is_whole_ring_iff_affine(name):
    F = corpus()[name]
    R = cox_ring(F)
    affine = len(F.max_cones) == 1
    assert irrelevant_membership(R, (0,) * R.rank) == affine


def test_irrelevant_generators_examples():
    assert sorted(irrelevant_generators(cox_ring(projective_plane()))) == [
        (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    R = cox_ring(p1_times_p1())
    gens = irrelevant_generators(R)
    # rays are ordered x1, x2, y1, y2
    assert sorted(gens) == sorted(
        tuple(int(k in (i, j)) for k in range(4)) for i in (0, 1) for j in (2, 3))
    assert len({R.degree(g) for g in gens}) == 1
    assert irrelevant_generators(cox_ring(square_cone())) == [(0, 0, 0, 0)]


def test_saturation_examples():
    R = cox_ring(projective_line())
    assert is_saturated(R, (1, 0))
    Q = cox_ring(square_cone())
    assert not is_saturated(Q, (0, 0, 0, 1))
    assert is_saturated(Q, (0, 0, 0, 0))
    P2 = cox_ring(projective_plane())
    assert is_saturated(P2, (1, 1, 1))
    assert sorted(saturated_covering(R)) == [(0, 1), (1, 0)]
    assert sorted(saturated_covering(P2)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert saturated_covering(Q) == [(0, 0, 0, 0)]


@pytest.mark.parametrize("name", NAMES)
def test_saturated_covering_maps_onto_maximal_charts(name):
    R = cox_ring(corpus()[name])
    qp = R.presentation
    images = set()
    for s in saturated_covering(R):
        assert is_saturated(R, s)
        zero = qp.source.cone(R.tight_cone(s))
        images.add(qp.target.locate(qp.Q @ zero.relative_interior_point()))
    assert images == set(qp.target.max_cones)


def test_veronese_examples():
    R = cox_ring(projective_line())
    for c in R.presentation.target.max_cones:
        assert veronese_index(R, c) == 1
        assert veronese_degrees(R, c) == [R.degree((1, 0))] == [(1,)]
    A = cox_ring(a2_mod_mu2())
    assert veronese_degrees(A, (0, 1)) == []
    assert veronese_index(A, (0, 1)) == 2
    Q = cox_ring(square_cone())
    assert str(Q.weights.presentation) == "Z"
    assert veronese_degrees(Q, (0, 1, 2, 3)) == []
    assert veronese_index(Q, (0, 1, 2, 3)) is None


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=8)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_veronese_is_everything_iff_principal(name, seed):
    F = corpus()[name]
    T = random_triangle(F, random.Random(seed))
    R = section_monoid(build_presentation(T))
    everything = all(veronese_index(R, c) == 1 for c in F.max_cones)
    assert everything == classify(T).principal


def test_weight_divisor_examples():
    P1 = projective_line()
    R = cox_ring(P1)
    assert weight_divisor(R, (1, 0)).coeffs == (1, 0)
    assert weight_module_member(R, (0,), (1, 0), (0,))
    P2 = projective_plane()
    R2 = cox_ring(P2)
    assert weight_divisor(R2, (1, 0, 0)).coeffs == (1, 0, 0)
    charts = P2.max_cones
    members = [m for m in oracles.box(2, -3, 3)
               if all(weight_module_member(R2, c, (1, 0, 0), m) for c in charts)]
    assert len(members) == 3
    assert members == list(sections_basis(P2, WeilDivisor(P2, (1, 0, 0))).basis)


@pytest.mark.parametrize("name", NAMES)
@given(m0=st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       m=st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_principal_twist(name, m0, m):
    F = corpus()[name]
    R = cox_ring(F)
    m0, m = tuple(m0[:F.rank]), tuple(m[:F.rank])
    mhat = R.triangle.phi1 @ m0
    assert weight_divisor(R, mhat) == div_char(F, m0)
    for c in F.max_cones:
        shifted = tuple(a + b for a, b in zip(m, m0))
        effective = all(sum(a * b for a, b in zip(shifted, F.rays[i])) >= 0 for i in c)
        assert weight_module_member(R, c, mhat, m) == effective


def test_monomial_ideal_generators_are_checked():
    R = cox_ring(projective_line())
    I = MonomialIdeal(R, [(1, 0)])
    assert I.contains((3, 2)) and not I.contains((0, 5))
    with pytest.raises(PreconditionError):
        MonomialIdeal(R, [(-1, 0)])


@pytest.mark.parametrize("d", range(6))
def test_degree_pieces_of_projective_plane(d):
    R = cox_ring(projective_plane())
    piece = R.degree_piece((d, 0, 0))
    assert len(piece) == comb(d + 2, 2)
    brute = [p for p in oracles.box(3, 0, d) if R.degree(p) == R.degree((d, 0, 0))]
    assert piece == brute


@pytest.mark.parametrize("a, b", [(a, b) for a in range(5) for b in range(5)])
def test_degree_pieces_match_sections_on_hirzebruch(a, b):
    F = hirzebruch(1)
    R = cox_ring(F)
    w = (a, b, 0, 0)
    D = weight_divisor(R, w)
    assert len(R.degree_piece(w)) == len(sections_basis(F, D))
