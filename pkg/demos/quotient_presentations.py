"""
Quotient presentations of small toric varieties
===============================================

"""

from torq import (ClassGroup, WeilDivisor, build_presentation, cartierization,
                  check_presentation, classify, cox_triangle, kernel_basis, pushforward,
                  strict_transform, weight_group)
from torq.fixtures import a2_mod_mu2, projective_line, square_cone

# the projective line: its Cox presentation lives in Z^2 with two rays
P1 = projective_line()
qp = build_presentation(cox_triangle(P1))
print("P1 source rays:", qp.source.rays)
print("P1 projection Q:", qp.Q.tolist(), "kernel", kernel_basis(qp.Q))

# the four conditions of a toric quotient presentation
print("conditions:", check_presentation(qp.fan_map).conditions())

# strict transform and pushforward identify the invariant Weil divisors
D = WeilDivisor(P1, (2, -1))
Dhat = strict_transform(qp, D)
print("strict transform of", D.coeffs, "is", Dhat.coeffs, "->", pushforward(qp, Dhat).coeffs)

# the cone over a square is affine but not simplicial: the source fan is the
# positive orthant of Z^4 with all 16 faces, while the square cone has only 10
Q = square_cone()
qq = build_presentation(cox_triangle(Q))
print("square cone:", len(qq.source), "source cones over", len(qq.target), "target cones")

# class groups and the type of the quotient
for name, F in (("P1", P1), ("A2/mu2", a2_mod_mu2()), ("square cone", Q)):
    c = classify(cox_triangle(F))
    print(f"{name:12s} Cl = {ClassGroup(F).presentation}, good={c.good} "
          f"geometric={c.geometric} principal={c.principal}")

# restricting the weights to Cartier classes turns A2/mu2 into a principal quotient
T = cox_triangle(a2_mod_mu2())
C = cartierization(T)
print("A2/mu2 weight group", weight_group(T).presentation, "->", weight_group(C).presentation,
      "principal:", classify(C).principal)
