"""The local model of two dispersion branches near a common zero: linearization
coefficients at the crossing, the hyperbola normal form, branch solving in the
local coordinates, asymptotic deviation from the reference lines, and the
one-field Lagrangian realizing a given quadratic dispersion function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .lagrangian import LagrangianBuilder, QuadraticLagrangian
from .polyalg import MultiPoly, as_fraction


@dataclass(frozen=True)
class CrossPointData:
    """Linearization data of G1, G2 and the coupling at a crossing point.

    Raw values are the partial derivatives g_jw = dG_j/dw, g_jk = dG_j/dk and
    the coupling value g_c at the point; g1, g2, g_gamma are the normalized
    slope ratios g_jk/g_jw and g_c/(g1w*g2w) entering the reduced relation
    (delta + g1 kappa)(delta + g2 kappa) = gamma * g_gamma.
    """

    g1w: float
    g1k: float
    g2w: float
    g2k: float
    gc: float
    gamma: float
    g1: float | None = None
    g2: float | None = None
    g_gamma: float | None = None

    @staticmethod
    def from_normalized(g1, g2, gamma, g_gamma) -> "CrossPointData":
        """Directly prescribed reduced model (raw derivatives normalized to 1)."""
        return CrossPointData(
            g1w=1.0,
            g1k=float(g1),
            g2w=1.0,
            g2k=float(g2),
            gc=float(g_gamma),
            gamma=float(gamma),
            g1=float(g1),
            g2=float(g2),
            g_gamma=float(g_gamma),
        )

    def coupling_product(self) -> float:
        """gamma * g_gamma, the right-hand side of the reduced relation."""
        if self.g_gamma is None:
            raise ValueError("crossing is not normalizable")
        return self.gamma * self.g_gamma


class NonNormalizableCrossingError(ValueError):
    """Raised when a frequency derivative vanishes at the crossing.

    The bilinear form data (raw derivatives) is still available on `.data`.
    """

    def __init__(self, data: CrossPointData, which: str):
        self.data = data
        super().__init__(f"non-normalizable crossing: {which} vanishes at the point")


def _point_scale(g: MultiPoly, point: dict) -> float:
    """Largest single-term magnitude of g at the point; the relative-zero yardstick."""
    best = 0.0
    for exps, coef in g.terms.items():
        t = abs(float(coef))
        for v, e in zip(g.variables, exps):
            t *= abs(point[v]) ** e if point[v] or e == 0 else 0.0
        best = max(best, t)
    return best if best > 0 else 1.0


def extract_crosspoint(
    g1poly: MultiPoly,
    g2poly: MultiPoly,
    gcpoly: MultiPoly,
    omega0: float,
    k0: float,
    gamma: float = 1.0,
    tol: float = 1e-9,
    wvar: str = "w",
    kvar: str = "k",
) -> CrossPointData:
    """Linearize two dispersion functions and the coupling at a common zero.

    The point must lie on both zero sets to within `tol` relative to each
    polynomial's term magnitude there.
    """
    point = {wvar: omega0, kvar: k0}
    for name, g in (("G1", g1poly), ("G2", g2poly)):
        val = abs(g.eval(point))
        if val > tol * _point_scale(g, point):
            raise ValueError(f"({omega0}, {k0}) is not on the zero set of {name} ({val=})")
    g1w = g1poly.derivative(wvar).eval(point)
    g1k = g1poly.derivative(kvar).eval(point)
    g2w = g2poly.derivative(wvar).eval(point)
    g2k = g2poly.derivative(kvar).eval(point)
    gc = gcpoly.eval(point)
    raw = CrossPointData(g1w, g1k, g2w, g2k, gc, gamma)
    if g1w == 0 or g2w == 0:
        which = "dG1/dw" if g1w == 0 else "dG2/dw"
        raise NonNormalizableCrossingError(raw, which)
    return CrossPointData(
        g1w, g1k, g2w, g2k, gc, gamma,
        g1=g1k / g1w, g2=g2k / g2w, g_gamma=gc / (g1w * g2w),
    )


def normal_form(cp: CrossPointData, delta: float, kappa: float) -> tuple[float, float]:
    """Map local coordinates to the hyperbola normal form.

    With l_j = g_jw*delta + g_jk*kappa, returns ((l1+l2)/2, (l1-l2)/2); on any
    solution of the bilinear relation, delta'^2 - kappa'^2 = gamma*g_c.
    """
    if cp.g1w * cp.g2k == cp.g2w * cp.g1k:
        raise ValueError("degenerate crossing: the two linear forms are parallel")
    l1 = cp.g1w * delta + cp.g1k * kappa
    l2 = cp.g2w * delta + cp.g2k * kappa
    return (l1 + l2) / 2, (l1 - l2) / 2


def solve_delta(cp: CrossPointData, kappa: float) -> tuple[float, float] | None:
    """The two frequency offsets solving the reduced relation at a wavenumber offset.

    Returns (delta_minus, delta_plus) sorted, or None inside the gap region
    (negative discriminant, which for gamma*g_gamma < 0 is a symmetric
    interval of kappa around zero).
    """
    if cp.g1 is None or cp.g2 is None:
        raise ValueError("crossing is not normalizable")
    rhs = cp.coupling_product()
    disc = (cp.g1 - cp.g2) ** 2 * kappa**2 + 4 * rhs
    if disc < 0:
        return None
    root = math.sqrt(disc)
    s = -(cp.g1 + cp.g2) * kappa
    return (s - root) / 2, (s + root) / 2


def gap_halfwidth(cp: CrossPointData) -> float:
    """Half-width of the kappa interval with no real branch (0 if none)."""
    rhs = cp.coupling_product()
    if rhs >= 0 or cp.g1 == cp.g2:
        return 0.0
    return 2 * math.sqrt(-rhs) / abs(cp.g1 - cp.g2)


def nearest_line_deviations(cp: CrossPointData, kappa: float):
    """For each real branch at kappa: (slope of nearer reference line, signed deviation).

    The nearer of the two uncoupled lines delta = -g1*kappa, -g2*kappa is
    chosen by comparing |delta + g1*kappa| with |delta + g2*kappa|.  The small
    factor is recovered from the product identity
    (delta + g1 kappa)(delta + g2 kappa) = gamma*g_gamma, which avoids the
    catastrophic cancellation of the direct difference at large kappa.
    """
    roots = solve_delta(cp, kappa)
    if roots is None:
        return []
    rhs = cp.coupling_product()
    out = []
    for delta in roots:
        d1 = delta + cp.g1 * kappa
        d2 = delta + cp.g2 * kappa
        near_g, near, far = (cp.g1, d1, d2) if abs(d1) <= abs(d2) else (cp.g2, d2, d1)
        if far != 0:
            near = rhs / far
        out.append((near_g, near))
    return out


@dataclass(frozen=True)
class QuadDispersion:
    """Coefficients of the quadratic dispersion function A w^2 - 2 w k B - C k^2 - D."""

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def poly(self, wvar: str = "w", kvar: str = "k") -> MultiPoly:
        w, k = MultiPoly.var(wvar), MultiPoly.var(kvar)
        return self.A * w * w - 2 * self.B * w * k - self.C * k * k - MultiPoly.const(self.D)


def crosspoint_coeffs(g1, g2, gamma, g_gamma) -> QuadDispersion:
    """Quadratic coefficients whose dispersion is (w + g1 k)(w + g2 k) - gamma*g_gamma.

    Matching the expanded product against A w^2 - 2wkB - Ck^2 - D forces
    B = -(g1+g2)/2 (the sign-flipped variant would produce the mirror-image
    relation in k), C = -g1*g2 and D = gamma*g_gamma.
    """
    g1, g2 = as_fraction(g1), as_fraction(g2)
    return QuadDispersion(
        A=Fraction(1),
        B=-(g1 + g2) / 2,
        C=-g1 * g2,
        D=as_fraction(gamma) * as_fraction(g_gamma),
    )


def crosspoint_lagrangian(q: QuadDispersion) -> QuadraticLagrangian:
    """One-field Lagrangian (1/2)[A Qt^2 + 2B Qt Qx - C Qx^2 - D Q^2].

    Its compiled dispersion polynomial is exactly q.poly(): the kinetic
    coefficient A must be nonzero.
    """
    if q.A == 0:
        raise ValueError("kinetic coefficient A must be nonzero")
    builder = LagrangianBuilder(1, ["Q"])
    builder.term(q.A * Fraction(1, 2), "Q", "t", "Q", "t")
    builder.term(q.B, "Q", "t", "Q", "x")
    builder.term(-q.C * Fraction(1, 2), "Q", "x", "Q", "x")
    builder.term(-q.D * Fraction(1, 2), "Q", "", "Q", "")
    return builder.build()
