"""Tests for the two quadrature engines."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hypident as hy
from hypident import DomainError

POLICY = hy.DEFAULT_POLICY


class TestChebyshevWeighted:
    def test_arcsine_integral(self):
        # f == 1: the weight alone integrates to pi on any interval
        est = hy.integrate_chebyshev_weighted(lambda z: 1.0, 0.0, 1.0, POLICY)
        assert est.converged
        assert abs(est.value - math.pi) < 1e-12

    def test_shifted_interval_weight(self):
        est = hy.integrate_chebyshev_weighted(lambda z: 1.0, 0.3, 0.45, POLICY)
        assert abs(est.value - math.pi) < 1e-12

    def test_reciprocal_pole_outside(self):
        # f(z) = 1/(1-z) over (T, S): closed form pi / sqrt((1-T)(1-S))
        t_v, s_v = 0.25, 0.5
        est = hy.integrate_chebyshev_weighted(lambda z: 1.0 / (1.0 - z), t_v, s_v, POLICY)
        expected = math.pi / math.sqrt((1.0 - t_v) * (1.0 - s_v))
        assert abs(est.value - expected) <= 1e-11 * expected
        assert abs(expected - math.pi / math.sqrt(3.0 / 8.0)) < 1e-15

    def test_linear_denominator_closed_form(self):
        # f(q) = 1/(1 + sqrt(T) + q (sqrt(S)-sqrt(T))) over (0,1) equals
        # pi sqrt(1-sqrt(T)) sqrt(1-sqrt(S)) / (sqrt(1-T) sqrt(1-S))
        for (t_v, s_v) in ((0.25, 0.5), (0.1, 0.9), (0.4, 0.45)):
            st_, ss = math.sqrt(t_v), math.sqrt(s_v)
            est = hy.integrate_chebyshev_weighted(
                lambda q: 1.0 / (1.0 + st_ + q * (ss - st_)), 0.0, 1.0, POLICY)
            expected = (math.pi * math.sqrt(1.0 - st_) * math.sqrt(1.0 - ss)
                        / (math.sqrt(1.0 - t_v) * math.sqrt(1.0 - s_v)))
            assert abs(est.value - expected) <= 1e-12 * expected

    def test_doubling_convergence_geometric(self):
        # successive rule differences shrink at least 2x per doubling until
        # they hit the roundoff floor
        cases = [
            (lambda z: 1.0, 0.0, 1.0),
            (lambda z: 1.0 / (1.0 - z), 0.25, 0.5),
            (lambda z: 1.0 / (1.5 + z), 0.0, 1.0),
            (lambda z: 1.0 / (1.0 - z), 0.01, 0.99),  # visibly slow variant
        ]
        for f, lo, hi in cases:
            estimates = [hy.chebyshev_rule(f, lo, hi, 2 ** k) for k in range(4, 11)]
            scale = abs(estimates[-1])
            diffs = [abs(b - a) for a, b in zip(estimates, estimates[1:])]
            for d_prev, d_next in zip(diffs, diffs[1:]):
                assert d_next <= max(0.5 * d_prev, 5e-15 * scale)

    def test_linearity_of_rule_machine_precision(self):
        f1 = lambda z: math.cos(3.0 * z)
        f2 = lambda z: 1.0 / (2.0 - z)
        a, b = 2.75, -1.25
        combo = hy.chebyshev_rule(lambda z: a * f1(z) + b * f2(z), 0.0, 1.0, 256)
        parts = a * hy.chebyshev_rule(f1, 0.0, 1.0, 256) + b * hy.chebyshev_rule(f2, 0.0, 1.0, 256)
        assert abs(combo - parts) <= 1e-14 * max(1.0, abs(parts))

    def test_engine_linearity_within_error_budget(self):
        f1 = lambda z: math.exp(z)
        f2 = lambda z: z * z
        a, b = 1.5, -0.5
        e1 = hy.integrate_chebyshev_weighted(f1, 0.0, 1.0, POLICY)
        e2 = hy.integrate_chebyshev_weighted(f2, 0.0, 1.0, POLICY)
        ec = hy.integrate_chebyshev_weighted(lambda z: a * f1(z) + b * f2(z), 0.0, 1.0, POLICY)
        budget = abs(a) * e1.error_estimate + abs(b) * e2.error_estimate + ec.error_estimate
        assert abs(ec.value - (a * e1.value + b * e2.value)) <= budget + 1e-13

    def test_unconverged_flag_instead_of_raise(self):
        policy = hy.EvaluationPolicy(abs_tol=1e-14, rel_tol=1e-14, max_nodes=40)
        est = hy.integrate_chebyshev_weighted(lambda z: 1.0 / (1.0 - z), 0.01, 0.99, policy)
        assert not est.converged

    def test_rejects_bad_bounds(self):
        with pytest.raises(DomainError):
            hy.integrate_chebyshev_weighted(lambda z: 1.0, 1.0, 0.0, POLICY)


class TestDecayingHalfline:
    def test_pure_exponential(self):
        est = hy.integrate_decaying_halfline(lambda s: math.exp(-s), 1.0, POLICY)
        assert est.converged
        assert abs(est.value - 1.0) <= max(est.error_estimate, 1e-9)

    def test_sech_weight_value(self):
        # int_0^inf 4 pi^2 / cosh(pi s) ds = 2 pi^2 (arctan of sinh)
        g = lambda s: 4.0 * math.pi ** 2 / math.cosh(math.pi * s)
        est = hy.integrate_decaying_halfline(g, 0.9 * math.pi, POLICY)
        expected = 2.0 * math.pi ** 2
        assert abs(est.value - expected) <= 1e-10 * expected

    def test_oscillatory_laplace(self):
        # int_0^inf cos(2s) exp(-pi s) ds = pi / (pi^2 + 4)
        g = lambda s: math.cos(2.0 * s) * math.exp(-math.pi * s)
        est = hy.integrate_decaying_halfline(g, math.pi, POLICY)
        expected = math.pi / (math.pi ** 2 + 4.0)
        assert abs(est.value - expected) <= 1e-11

    def test_tail_margin_insensitivity(self):
        # increasing the truncation margin by 5 moves the result by < abs_tol
        for g, rate in (
            (lambda s: math.exp(-s), 1.0),
            (lambda s: 4.0 * math.pi ** 2 / math.cosh(math.pi * s), 0.9 * math.pi),
            (lambda s: math.cos(2.0 * s) * math.exp(-math.pi * s), math.pi),
        ):
            base = hy.integrate_decaying_halfline(g, rate, POLICY, margin=2.0)
            wide = hy.integrate_decaying_halfline(g, rate, POLICY, margin=7.0)
            assert abs(base.value - wide.value) < POLICY.abs_tol

    def test_non_decay_detected(self):
        with pytest.raises(DomainError) as exc:
            hy.integrate_decaying_halfline(lambda s: math.exp(0.5 * s), 1.0, POLICY)
        assert "decay" in str(exc.value)

    def test_constant_integrand_detected(self):
        with pytest.raises(DomainError):
            hy.integrate_decaying_halfline(lambda s: 1.0, 2.0, POLICY)

    def test_zero_function(self):
        est = hy.integrate_decaying_halfline(lambda s: 0.0, 1.0, POLICY)
        assert est.value == 0.0 and est.converged

    def test_rejects_bad_rate(self):
        with pytest.raises(DomainError):
            hy.integrate_decaying_halfline(lambda s: math.exp(-s), 0.0, POLICY)

    def test_unconverged_budget(self):
        policy = hy.EvaluationPolicy(abs_tol=1e-13, rel_tol=1e-13, max_nodes=150)
        est = hy.integrate_decaying_halfline(
            lambda s: math.cos(40.0 * s) * math.exp(-s), 1.0, policy)
        assert not est.converged

    def test_panel_linearity(self):
        g1 = lambda s: math.exp(-s)
        g2 = lambda s: math.cos(s) * math.exp(-0.5 * s)
        a, b = 0.7, -1.9
        v_combo, _ = hy.gauss_kronrod_panel(lambda s: a * g1(s) + b * g2(s), 0.0, 3.0)
        v1, _ = hy.gauss_kronrod_panel(g1, 0.0, 3.0)
        v2, _ = hy.gauss_kronrod_panel(g2, 0.0, 3.0)
        assert abs(v_combo - (a * v1 + b * v2)) <= 1e-14 * max(1.0, abs(v_combo))


class TestDeterminism:
    def test_bit_reproducible(self):
        f = lambda z: math.sin(7.0 * z) / (1.1 - z)
        a = hy.integrate_chebyshev_weighted(f, 0.0, 1.0, POLICY)
        b = hy.integrate_chebyshev_weighted(f, 0.0, 1.0, POLICY)
        assert a.value == b.value and a.error_estimate == b.error_estimate
        g = lambda s: math.cos(3.0 * s) * math.exp(-s)
        c = hy.integrate_decaying_halfline(g, 1.0, POLICY)
        d = hy.integrate_decaying_halfline(g, 1.0, POLICY)
        assert c.value == d.value and c.nodes_used == d.nodes_used

    @settings(max_examples=30, deadline=None)
    @given(vals=st.lists(st.floats(-1e6, 1e6), min_size=0, max_size=200))
    def test_pairwise_sum_close_to_fsum(self, vals):
        got = hy.pairwise_sum([complex(v) for v in vals]).real
        ref = math.fsum(vals)
        assert abs(got - ref) <= 1e-9 * max(1.0, abs(ref))
