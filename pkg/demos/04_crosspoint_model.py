"""The local model at a branch crossing: an avoided crossing on a hyperbola.

Wherever two dispersion functions share a zero, the coupled relation near that
point reduces to (delta + g1 kappa)(delta + g2 kappa) = gamma*g_gamma, whose
graph is a hyperbola between the two uncoupled lines.  The same machinery
extracts (g1, g2) from full dispersion polynomials, here for the wing beam.
"""

from facdisp.crosspoint import (
    CrossPointData,
    crosspoint_coeffs,
    crosspoint_lagrangian,
    extract_crosspoint,
    gap_halfwidth,
    nearest_line_deviations,
    normal_form,
    solve_delta,
)
from facdisp.lagrangian import dispersion_poly
from facdisp.models import WingParams, wing_system
from facdisp.polyalg import MultiPoly, format_poly

# linearize the wing factors at their crossing (unit parameters: k=1, w=1)
sys_ = wing_system(WingParams())
cp = extract_crosspoint(sys_.g1, sys_.g2, MultiPoly.const(1), 1.0, 1.0)
print("wing crossing at (w, k) = (1, 1):")
print(f"  raw derivatives  g1w={cp.g1w}, g1k={cp.g1k}, g2w={cp.g2w}, g2k={cp.g2k}")
print(f"  reduced slopes   g1={cp.g1}, g2={cp.g2}")

# the reference local model
cp = CrossPointData.from_normalized(1, 10, 0.4, 1.0)
print()
print("local model g1=1, g2=10, gamma=0.4, g_gamma=1:")
print(f"{'kappa':>8} {'delta_-':>12} {'delta_+':>12} {'invariant':>12}")
for kappa in (-1.0, -0.3, 0.0, 0.3, 1.0):
    lo, hi = solve_delta(cp, kappa)
    dp, kp = normal_form(cp, lo, kappa)
    inv = dp * dp - kp * kp
    print(f"{kappa:8.2f} {lo:12.6f} {hi:12.6f} {inv:12.6f}")
print("the invariant equals gamma*g_gamma on every branch point: a hyperbola.")

# negative coupling opens a true gap in kappa
cpn = CrossPointData.from_normalized(1, 10, 0.4, -1.0)
print()
print(f"with g_gamma = -1 the branches vanish for |kappa| < {gap_halfwidth(cpn):.4f}")

# far from the crossing each branch hugs its reference line like 1/kappa
print()
print("deviation of the branch nearest delta = -g1 kappa:")
for kappa in (1e2, 1e3, 1e4):
    dev = [d for g, d in nearest_line_deviations(cp, kappa) if g == cp.g1][0]
    print(f"  kappa = {kappa:8.0f}: deviation = {dev: .3e}   kappa*dev = {kappa*dev:.8f}")
print("kappa * deviation tends to gamma*g_gamma/(g2 - g1) = 0.4/9 =", 0.4 / 9)

# and the whole local model is realizable as a one-field Lagrangian
q = crosspoint_coeffs(1, 10, 1, 1)
lag = crosspoint_lagrangian(q)
print()
print("realizing Lagrangian coefficients: A=%s B=%s C=%s D=%s" % (q.A, q.B, q.C, q.D))
print("its dispersion polynomial       :", format_poly(dispersion_poly(lag)))
