"""
Homogeneous coordinate rings and their graded pieces
====================================================

"""

from math import comb

from torq import (MonomialIdeal, WeilDivisor, build_presentation, cox_triangle,
                  irrelevant_generators, saturated_covering, section_monoid, sections_basis,
                  vanishing_crosscheck, vanishing_test, weight_divisor)
from torq.fixtures import hirzebruch, projective_line, projective_plane

# the Cox ring of P2 is a polynomial ring in three variables of degree one
P2 = projective_plane()
R = section_monoid(build_presentation(cox_triangle(P2)))
print("Hilbert basis:", R.hilbert_basis, "degrees:", R.degrees)

# degree d monomials match the sections of O(d)
for d in range(6):
    piece = R.degree_piece((d, 0, 0))
    print(f"d={d}: {len(piece)} monomials, {comb(d + 2, 2)} expected")

# the irrelevant ideal is generated up to radical by one monomial per chart
print("irrelevant generators:", irrelevant_generators(R))
print("saturated covering:", saturated_covering(R))

# on the Hirzebruch surface the grading group has rank two
F = hirzebruch(1)
H = section_monoid(build_presentation(cox_triangle(F)))
print("Hz1 weight group:", H.weights.presentation)
for a in range(3):
    row = []
    for b in range(3):
        w = (a, b, 0, 0)
        row.append((len(H.degree_piece(w)), len(sections_basis(F, weight_divisor(H, w)))))
    print("  ", row)

# the sheaf of S/I vanishes exactly when I is not contained in a chart's ideal
P1 = projective_line()
S = section_monoid(build_presentation(cox_triangle(P1)))
for gens in ([(1, 0), (0, 1)], [(1, 0)], []):
    I = MonomialIdeal(S, gens)
    report = vanishing_crosscheck(S, I, 6, 6)
    print(gens, "zero sheaf:", vanishing_test(S, I), "cross-check agrees:", report.agrees)

# sections of a divisor on P2, listed lexicographically
print(sections_basis(P2, WeilDivisor(P2, (0, 0, 2))).basis)
