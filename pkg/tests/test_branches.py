import math
from fractions import Fraction as F

import pytest

from facdisp.branches import (
    BranchTrace,
    asymptotic_S_values,
    asymptotic_slopes,
    cutoff_frequency,
    laurent_PQR,
    laurent_quadratic_residual,
    laurent_S,
    log_samples,
    lower_series,
    order_matches,
    real_roots,
    residual_order,
    trace_branches,
    upper_series,
)
from facdisp.models import (
    kirchhoff_dispersion,
    mindlin_default_params,
    mindlin_factorized,
    wing_matrix,
    WingParams,
)
from facdisp.polyalg import MultiPoly, TruncSeries

W = MultiPoly.var("w")
DATA = mindlin_default_params(b=F(1, 10))


def mindlin_A(b):
    _, A = mindlin_factorized(mindlin_default_params(b=b))
    return A.subs({"b": F(b)})


class TestRealRoots:
    def test_simple_quadratic(self):
        assert real_roots(W**2 - 4) == pytest.approx([-2.0, 2.0], abs=1e-12)

    def test_plate_roots_at_zero_wavenumber(self):
        roots = real_roots(mindlin_A(F(1, 10)).subs({"k": 0}))
        w0 = 0.2 * math.sqrt(3)
        assert len(roots) == 4
        assert roots == pytest.approx([-w0, 0.0, 0.0, w0], abs=1e-12)

    def test_wing_degenerate_double_roots(self):
        # unit parameters, b=0, k=1: both factors vanish at w = +-1
        det = wing_matrix(WingParams()).det().subs({"b": 0, "k": 1})
        roots = real_roots(det)
        assert roots == pytest.approx([-1.0, -1.0, 1.0, 1.0], abs=1e-12)

    def test_no_real_roots(self):
        assert real_roots(W**2 + 1) == []

    def test_rational_root_exact_hit(self):
        assert real_roots(W * 2 - 1) == pytest.approx([0.5], abs=1e-15)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            real_roots(MultiPoly.zero())

    def test_bad_tolerance_rejected(self):
        with pytest.raises(ValueError):
            real_roots(W**2 - 1, tol=0)

    def test_root_containment(self):
        # every reported root satisfies the polynomial to local scale
        p = (W**2 - 2) * (W**2 - F(9, 7)) * (W + F(1, 3))
        for r in real_roots(p):
            coeffs = p.univariate_coefficients("w")
            scale = max(abs(float(c)) * abs(r) ** i for i, c in enumerate(coeffs))
            assert abs(p.eval({"w": r})) <= 1e-10 * scale


class TestTraceBranches:
    def test_kirchhoff_parabolas(self):
        disp = kirchhoff_dispersion(1, 1, 1, radial=True)
        grid = [0.1 * i for i in range(1, 11)]
        traces = trace_branches(disp, grid)
        assert len(traces) == 2
        for t in traces:
            sign = 1 if t.last_omega() > 0 else -1
            for k, w in t.samples:
                assert w == pytest.approx(sign * k * k, abs=1e-10)

    def test_uncoupled_plate_slopes(self):
        traces = trace_branches(mindlin_A(0), [0.5, 1.0, 1.5, 2.0])
        s1, s2 = asymptotic_slopes(DATA)
        slopes = sorted(t.last_omega() / 2.0 for t in traces)
        assert slopes == pytest.approx([-s2, -s1, s1, s2], abs=1e-10)

    def test_f_branch_lifts_off(self):
        p = mindlin_default_params(b=F(1, 10))
        f, _ = mindlin_factorized(p)
        traces = trace_branches(f.subs({"b": p.b}), [0.0, 0.01, 0.02])
        w_at_zero = sorted(t.samples[0][1] for t in traces)
        w0 = cutoff_frequency(p)
        assert w_at_zero == pytest.approx([-w0, w0], abs=1e-12)

    def test_branch_symmetry(self):
        # even dispersion polynomials produce +- paired branches
        traces = trace_branches(mindlin_A(F(1, 10)), [0.05, 0.1, 0.15])
        omegas = sorted(t.last_omega() for t in traces)
        assert len(omegas) == 4
        assert omegas[0] == pytest.approx(-omegas[3], rel=1e-10)
        assert omegas[1] == pytest.approx(-omegas[2], rel=1e-10)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            trace_branches(W**2 - 1, [])
        with pytest.raises(ValueError):
            trace_branches(W**2 - 1, [1.0, 0.5])

    def test_branch_count_can_change(self):
        # w^2 - (k - 1/2): no real roots left of k = 1/2, two to the right
        K = MultiPoly.var("k")
        disp = W**2 - K + MultiPoly.const(F(1, 2))
        traces = trace_branches(disp, [0.0, 0.25, 0.75, 1.0])
        assert len(traces) == 2
        for t in traces:
            assert t.samples[0][0] == 0.75  # branches appear mid-grid

    def test_S_route_agrees_with_frequency_route(self):
        # on every traced sample, S = k^2/w^2 solves the quadratic in S
        p = mindlin_default_params(b=F(1, 10))
        P, Q, R = laurent_PQR(p)
        kGD = float(p.kappa * p.G * p.D)
        traces = trace_branches(mindlin_A(p.b), [0.1, 0.2, 0.3])
        checked = 0
        for t in traces:
            for k, w in t.samples:
                if w == 0:
                    continue
                S = k * k / (w * w)
                res = kGD * S * S - float(P) * S + float(p.rho**2 * p.h**3) / 12 \
                    - float(p.b**2 * p.kappa * p.G * p.rho * p.h) / (w * w)
                scale = max(kGD * S * S, abs(float(P)) * S, 1 / 12)
                assert abs(res) <= 1e-10 * scale
                checked += 1
        assert checked >= 12

    def test_threshold_region(self):
        # no roots strictly between the lower pair and the cutoff at small k
        p = mindlin_default_params(b=F(1, 10))
        w0 = cutoff_frequency(p)
        roots = [r for r in real_roots(mindlin_A(p.b).subs({"k": F(1, 100)})) if r > 0]
        assert len(roots) == 2
        assert roots[0] < 0.01 < w0 < roots[1] * (1 + 1e-9)
        # exactly four real roots just above the cutoff at k=0 side
        assert len(real_roots(mindlin_A(p.b).subs({"k": F(1, 50)}))) == 4


class TestClosedFormSeries:
    def test_lower_coefficients_at_data(self):
        s = lower_series(DATA)
        assert s.values[0] == F(10)
        assert s.values[1] == F(-1625, 3)
        assert s.values[2] == F(578125, 12)

    def test_upper_coefficients_at_data(self):
        s = upper_series(DATA)
        w0, d1, d2 = s.values
        assert float(w0) == pytest.approx(0.2 * math.sqrt(3), abs=1e-15)
        assert float(d1) == pytest.approx(math.sqrt(3) * 13 / 1.2, rel=1e-13)
        assert float(d2) == pytest.approx(-math.sqrt(3) * 217 / 0.576, rel=1e-13)

    def test_b_zero_rejected(self):
        with pytest.raises(ValueError):
            lower_series(mindlin_default_params(b=0))
        with pytest.raises(ValueError):
            upper_series(mindlin_default_params(b=0))

    def test_series_signs(self):
        s = lower_series(DATA)
        assert s.values[0] > 0
        u = upper_series(DATA)
        assert float(u.values[0]) > 0


class TestLaurent:
    def test_parameter_combinations(self):
        P, Q, R = laurent_PQR(DATA)
        assert P == F(13, 12)
        assert Q == F(-11, 12)
        assert R == F(1, 5)

    def test_sum_is_vieta_trace(self):
        sp = laurent_S(DATA, +1)
        sm = laurent_S(DATA, -1)
        total = sp + sm
        P, _, _ = laurent_PQR(DATA)
        want = TruncSeries("w", {F(0): P / (DATA.kappa * DATA.G * DATA.D)}, total.order)
        assert total == want

    def test_product_matches_vieta(self):
        sp, sm = laurent_S(DATA, +1), laurent_S(DATA, -1)
        prod = sp * sm
        kGD = DATA.kappa * DATA.G * DATA.D
        assert prod.terms[F(-2)] == -F(1, 100)
        assert prod.terms[F(0)] == DATA.rho**2 * DATA.h**3 / (12 * kGD) \
            - 0  # the w^0 coefficient is rho^2 h^3 /(12 kGD) by Vieta
        assert F(2) not in prod.terms

    def test_residual_vanishes_through_cubic_order(self):
        for sign in (1, -1):
            res = laurent_quadratic_residual(DATA, laurent_S(DATA, sign))
            assert res.is_zero()
            assert res.order == 4

    def test_order_cap(self):
        with pytest.raises(ValueError):
            laurent_S(DATA, +1, order=6)

    def test_asymptotic_S_limits(self):
        assert asymptotic_S_values(DATA) == (F(1), F(1, 12))


class TestResidualOrder:
    def test_exact_relation_reports_none(self):
        disp = kirchhoff_dispersion(1, 1, 1, radial=True)
        slope = residual_order(
            lambda k, w: float(disp.eval_exact({"k": F(k), "w": w})),
            lambda k: F(k) ** 2,
            log_samples(1e-3, 1e-1, 11),
        )
        assert slope is None
        assert order_matches(slope, 8)

    def test_known_power_law(self):
        slope = residual_order(lambda s, v: s**3 * 2.7, lambda s: 0.0,
                               log_samples(1e-4, 1e-2, 15))
        assert slope == pytest.approx(3.0, abs=1e-12)

    def test_sample_validation(self):
        with pytest.raises(ValueError):
            residual_order(lambda s, v: s, lambda s: 0.0, [0.1, 0.2])
        with pytest.raises(ValueError):
            residual_order(lambda s, v: s, lambda s: 0.0, [-1.0, 1.0, 200.0])

    def test_asymptotic_slopes_at_data(self):
        s1, s2 = asymptotic_slopes(DATA)
        assert s1 == pytest.approx(1.0)
        assert s2 == pytest.approx(math.sqrt(12))

    def test_traced_branch_slope_recovery(self):
        p = mindlin_default_params(b=F(1, 5))
        traces = trace_branches(mindlin_A(p.b), [99.0, 100.0])
        s1, s2 = asymptotic_slopes(p)
        finals = sorted(t.last_omega() / 100.0 for t in traces if t.last_omega() > 0)
        assert abs(finals[0] - s1) < 1e-3
        assert abs(finals[1] - s2) < 1e-3

    def test_slope_recovery_monotone_beyond_k10(self):
        p = mindlin_default_params(b=F(1, 5))
        s1, s2 = asymptotic_slopes(p)
        worst = []
        for k in (10.0, 30.0, 100.0):
            roots = [r for r in real_roots(mindlin_A(p.b).subs({"k": F(k)})) if r > 0]
            worst.append(max(min(abs(r / k - s) for s in (s1, s2)) for r in roots))
        assert worst[0] > worst[1] > worst[2]

    def test_curvature_decreases_with_coupling(self):
        kprobe = F(1, 100)
        curv = []
        for b in (F(1, 10), F(1, 5)):
            roots = [r for r in real_roots(mindlin_A(b).subs({"k": kprobe})) if r > 0]
            curv.append(min(roots) / float(kprobe) ** 2)
        assert curv[0] > curv[1]


def test_branch_trace_accessors():
    t = BranchTrace(0, [(0.1, 1.0), (0.2, 2.0)], {"model": "demo"})
    assert t.ks == [0.1, 0.2]
    assert t.omegas == [1.0, 2.0]
    assert t.last_omega() == 2.0
