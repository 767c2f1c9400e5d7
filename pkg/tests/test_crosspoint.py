import math
import random
from fractions import Fraction as F

import pytest

from facdisp.crosspoint import (
    CrossPointData,
    NonNormalizableCrossingError,
    QuadDispersion,
    crosspoint_coeffs,
    crosspoint_lagrangian,
    extract_crosspoint,
    gap_halfwidth,
    nearest_line_deviations,
    normal_form,
    solve_delta,
)
from facdisp.lagrangian import dispersion_poly
from facdisp.polyalg import MultiPoly

W = MultiPoly.var("w")
K = MultiPoly.var("k")


class TestExtract:
    def test_linear_functions(self):
        cp = extract_crosspoint(W - K, W - 2 * K, MultiPoly.const(1), 0.0, 0.0)
        assert cp.g1 == -1
        assert cp.g2 == -2

    def test_wing_crossing(self):
        # unit parameters: torsion branch w = k, bending branch w = k^2 meet at (1, 1)
        g1 = W**2 - K**2
        g2 = W**2 - K**4
        cp = extract_crosspoint(g1, g2, MultiPoly.const(1), 1.0, 1.0)
        assert (cp.g1w, cp.g1k) == (2.0, -2.0)
        assert (cp.g2w, cp.g2k) == (2.0, -4.0)
        assert (cp.g1, cp.g2) == (-1.0, -2.0)
        assert cp.g_gamma == pytest.approx(0.25)

    def test_plate_origin_not_normalizable(self):
        # both quadratic factors of the uncoupled plate have dG/dw = 0 at (0,0)
        f1 = MultiPoly(("k", "w"), {(0, 2): F(1, 12), (2, 0): F(-1)})
        f2 = MultiPoly(("k", "w"), {(0, 2): F(1), (2, 0): F(-1)})
        with pytest.raises(NonNormalizableCrossingError) as err:
            extract_crosspoint(f1, f2, MultiPoly.const(1), 0.0, 0.0)
        assert err.value.data.g1w == 0.0

    def test_point_must_lie_on_both_zero_sets(self):
        with pytest.raises(ValueError, match="zero set"):
            extract_crosspoint(W - K, W - 2 * K, MultiPoly.const(1), 1.0, 0.0)


class TestNormalForm:
    def test_identity_map(self):
        cp = CrossPointData(g1w=1, g1k=1, g2w=1, g2k=-1, gc=0.7, gamma=1.0,
                            g1=1.0, g2=-1.0, g_gamma=0.7)
        assert normal_form(cp, 0.3, 0.4) == pytest.approx((0.3, 0.4))

    def test_hyperbola_invariant_on_solutions(self):
        cp = CrossPointData.from_normalized(1.0, 10.0, 0.4, 1.0)
        rhs = 0.4
        for kappa in (-2.0, -0.31, 0.17, 1.9):
            for delta in solve_delta(cp, kappa):
                dp, kp = normal_form(cp, delta, kappa)
                assert dp * dp - kp * kp == pytest.approx(rhs, abs=1e-10)

    def test_zero_coupling_degenerates(self):
        cp = CrossPointData.from_normalized(1.0, 10.0, 0.0, 1.0)
        for kappa in (-1.0, 0.5):
            for delta in solve_delta(cp, kappa):
                dp, kp = normal_form(cp, delta, kappa)
                assert dp * dp == pytest.approx(kp * kp, abs=1e-12)

    def test_parallel_forms_rejected(self):
        cp = CrossPointData(g1w=1, g1k=2, g2w=2, g2k=4, gc=1.0, gamma=1.0,
                            g1=2.0, g2=2.0, g_gamma=0.25)
        with pytest.raises(ValueError, match="degenerate"):
            normal_form(cp, 0.1, 0.1)


class TestSolveDelta:
    def test_symmetric_roots_at_zero_offset(self):
        cp = CrossPointData.from_normalized(1.0, 10.0, 1.0, 1.0)
        lo, hi = solve_delta(cp, 0.0)
        assert (lo, hi) == pytest.approx((-1.0, 1.0))

    def test_uncoupled_lines(self):
        cp = CrossPointData.from_normalized(1.0, 10.0, 0.0, 1.0)
        lo, hi = solve_delta(cp, 2.0)
        assert sorted((lo, hi)) == pytest.approx([-20.0, -2.0])
        # at zero coupling the roots coincide exactly at the crossing
        assert solve_delta(cp, 0.0) == (0.0, 0.0)

    def test_large_offset_deviation(self):
        cp = CrossPointData.from_normalized(1.0, 10.0, 1.0, 1.0)
        devs = nearest_line_deviations(cp, 1e3)
        near1 = [d for g, d in devs if g == 1.0]
        assert len(near1) == 1
        assert near1[0] == pytest.approx(1 / 9000, rel=0.01)

    def test_gap_region(self):
        cp = CrossPointData.from_normalized(1.0, 10.0, 1.0, -1.0)
        half = gap_halfwidth(cp)
        assert half == pytest.approx(2 / 9)
        assert solve_delta(cp, 0.0) is None
        assert solve_delta(cp, half * 1.01) is not None

    def test_gap_law_minimum(self):
        # for positive coupling the two branches never coincide
        cp = CrossPointData.from_normalized(1.0, 10.0, 2.0, 1.0)
        min_gap = min(
            hi - lo
            for kappa in [i / 50 - 1 for i in range(101)]
            for lo, hi in [solve_delta(cp, kappa)]
        )
        assert min_gap >= 2 * math.sqrt(2.0) - 1e-9

    def test_asymptotic_approach_converges(self):
        cp = CrossPointData.from_normalized(1.0, 10.0, 1.0, 1.0)
        estimates = []
        for kappa in (1e2, 1e3, 1e4):
            near1 = [d for g, d in nearest_line_deviations(cp, kappa) if g == 1.0]
            estimates.append(kappa * near1[0])
        target = 1 / 9
        errors = [abs(e - target) for e in estimates]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 1e-5


class TestLagrangianConstruction:
    def test_klein_gordon_like(self):
        q = crosspoint_coeffs(0, 0, 1, F(-9, 4))  # gamma*g_gamma = -m^2
        assert (q.A, q.B, q.C, q.D) == (F(1), F(0), F(0), F(-9, 4))
        assert dispersion_poly(crosspoint_lagrangian(q)) == W * W + F(9, 4)

    def test_reference_values(self):
        # reproducing the product form exactly forces B = -(g1+g2)/2; the
        # printed sign variant mirrors k and is rejected by the exact check
        q = crosspoint_coeffs(1, 10, F(2, 5), F(5, 2))
        assert (q.A, q.B, q.C, q.D) == (F(1), F(-11, 2), F(-10), F(1))
        got = dispersion_poly(crosspoint_lagrangian(q))
        assert got == (W + K) * (W + 10 * K) - 1

    def test_round_trip_random_quadratics(self):
        rng = random.Random(61)
        for _ in range(100):
            q = QuadDispersion(
                A=F(rng.randint(1, 9), rng.randint(1, 5)),
                B=F(rng.randint(-9, 9), rng.randint(1, 5)),
                C=F(rng.randint(-9, 9), rng.randint(1, 5)),
                D=F(rng.randint(-9, 9), rng.randint(1, 5)),
            )
            assert dispersion_poly(crosspoint_lagrangian(q)) == q.poly()

    def test_zero_kinetic_rejected(self):
        with pytest.raises(ValueError):
            crosspoint_lagrangian(QuadDispersion(0, 1, 1, 1))

    def test_pipeline_through_parser(self):
        from facdisp import builtin_lagrangian_text, parse_lagrangian

        lag = parse_lagrangian(builtin_lagrangian_text("crosspoint"))
        disp = dispersion_poly(lag).subs(lag.param_values)
        assert disp == (W + K) * (W + 10 * K) - 1
