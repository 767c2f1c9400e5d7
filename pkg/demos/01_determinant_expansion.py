"""How the determinant of a coupled system splits into G1*G2 plus a coupling
remainder.

We build a block-diagonal matrix for two uncoupled subsystems, switch on a
polynomial coupling scaled by b, and watch the determinant reorganize itself:
the b-free part is exactly the product of the subsystem determinants, the b^1
coefficient is the trace of adjugate-times-coupling, and everything reassembles
exactly.
"""

from facdisp import (
    MultiPoly,
    PolyMatrix,
    coupled_b_expansion,
    format_poly,
    reassemble_b_expansion,
)

w = MultiPoly.var("w")
k = MultiPoly.var("k")
b = MultiPoly.var("b")

# two scalar subsystems: a sound-like mode and a stiffer one
lam = PolyMatrix.diagonal([w * w - k * k, w * w - 4 * k * k])
coupling = PolyMatrix([[MultiPoly.zero(), k], [k, MultiPoly.zero()]])

print("uncoupled matrix  :", lam)
print("coupling matrix   :", coupling)

det_a, coeffs, det_b = coupled_b_expansion(lam, coupling)
print()
print("det(Lambda)       =", format_poly(det_a), "   <- G1 * G2")
for r, c in enumerate(coeffs, start=1):
    print(f"c_{r}(b)            =", format_poly(c))
print("det(B)            =", format_poly(det_b))

full = (lam + coupling.scale(b)).det()
reassembled = reassemble_b_expansion(det_a, coeffs, det_b)
print()
print("det(Lambda + b B) =", format_poly(full))
print("reassembled       =", format_poly(reassembled))
assert full == reassembled

# the linear coefficient is tr(adjugate(Lambda) * B); here it vanishes because
# the coupling is purely off-diagonal
c1 = (lam.adjugate() @ coupling).trace()
print("tr(adj(L) B)      =", format_poly(c1))
assert c1 == coeffs[0]

# so the dispersion relation reads G1 * G2 = b^2 k^2: switching b off
# recovers the two independent cones exactly
remainder = full - det_a
print()
print("coupling remainder =", format_poly(remainder), " (vanishes at b = 0)")
assert remainder.subs({"b": 0}).is_zero()
print()
print("factorized dispersion relation:  (w^2 - k^2)(w^2 - 4k^2) = b^2 k^2")
