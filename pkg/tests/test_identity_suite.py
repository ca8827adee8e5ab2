"""Tests for the identity checks: main integral, Barnes and sech-weighted
spectral integrals, kernel factorization, Q integral, obstruction."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hypident as hy
from hypident import DegenerateConfigurationError, DomainError

PAIR = hy.ParameterPair(0.25, 0.5)
WIDE = hy.ParameterPair(0.1, 0.9)
T_GRID = (0.0, 0.5, 1.0, 1.5, 2.0, 0.5j, 1.0j, 0.3 + 0.4j)


class TestMainIdentity:
    def test_elementary_t_zero(self):
        rec = hy.check_main_identity(PAIR, 0.0)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - math.pi / math.sqrt(3.0 / 8.0)) < 1e-14
        assert rec.rel_err <= 1e-11

    def test_t_independence(self):
        values = [hy.check_main_identity(PAIR, t).lhs for t in T_GRID]
        scale = abs(values[0])
        spread = max(abs(a - b) for a in values for b in values)
        assert spread / scale <= 1e-7

    def test_purely_imaginary_t(self):
        rec = hy.check_main_identity(PAIR, 0.5j)
        assert rec.status == hy.PASS

    def test_wide_pair_large_t_cancellation_visible(self):
        rec = hy.check_main_identity(WIDE, 2.0)
        assert rec.status == hy.PASS
        assert rec.metadata["digits_lost"] > 2.0

    def test_cancellation_cap(self):
        with pytest.raises(DomainError):
            hy.check_main_identity(PAIR, 3.0)
        rec = hy.check_main_identity(PAIR, 3.0, re_t_cap=4.0)
        assert rec.status == hy.PASS

    def test_thin_interval_still_passes(self):
        pair = hy.ParameterPair(0.3, 0.3 + 1e-4)
        rec = hy.check_main_identity(pair, 1.0, tolerance=1e-6)
        assert rec.status == hy.PASS

    def test_degenerate_limit_value(self):
        # as S - T -> 0+ the integral tends to pi/(1-T); with a width of
        # 2e-7 the first-order gap pi (S-T) / (2 (1-T)^2) stays under 1e-6
        t_v = 0.3
        pair = hy.ParameterPair(t_v, t_v + 2e-7)
        rec = hy.check_main_identity(pair, 1.0)
        assert abs(rec.lhs - math.pi / (1.0 - t_v)) <= 1e-6

    def test_unconverged_flagged(self):
        policy = hy.EvaluationPolicy(abs_tol=1e-14, rel_tol=1e-14, max_nodes=40)
        rec = hy.check_main_identity(WIDE, 2.0, policy)
        assert rec.status == hy.UNCONVERGED


class TestBarnesTriple:
    def test_a_zero_half_half(self):
        rec = hy.check_barnes_triple(0.0, 0.5, 0.5)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - math.pi) < 1e-14

    def test_all_half(self):
        rec = hy.check_barnes_triple(0.5, 0.5, 0.5)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - 1.0) < 1e-14

    def test_one_one_half(self):
        rec = hy.check_barnes_triple(1.0, 1.0, 0.5)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - math.pi / 4.0) < 1e-14

    def test_domain(self):
        with pytest.raises(DomainError):
            hy.check_barnes_triple(-0.1, 0.5, 0.5)
        with pytest.raises(DomainError):
            hy.check_barnes_triple(0.5, 0.0, 0.5)


class TestSpectralPower:
    def test_base_case(self):
        rec = hy.check_spectral_power(0.0, 0.0)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - math.pi) < 1e-14

    def test_shift_three(self):
        rec = hy.check_spectral_power(3.0, 0.0)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - math.pi / 2.0) < 1e-14

    def test_negative_shift_with_tau(self):
        rec = hy.check_spectral_power(-0.5, 1.0)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - math.pi * math.sqrt(2.0)) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            hy.check_spectral_power(-1.0, 0.0)
        with pytest.raises(DomainError):
            hy.check_spectral_power(0.5, -0.1)


class TestSpectralResolvent:
    def test_zero_shift(self):
        for r in (0.5, 2.0):
            rec = hy.check_spectral_resolvent(0.0, r)
            assert rec.status == hy.PASS
            assert abs(rec.rhs - math.pi / (1.0 + r)) < 1e-14

    def test_example_values(self):
        rec = hy.check_spectral_resolvent(3.0, 1.0)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - 2.0 * math.pi / 5.0) < 1e-14

    def test_small_r_consistency_with_power(self):
        # r -> 0 removes the half-shifted factor
        a_shift = 0.7
        res = hy.check_spectral_resolvent(a_shift, 1e-6)
        pow_ = hy.check_spectral_power(a_shift, 0.0)
        assert abs(res.lhs - pow_.lhs) < 1e-5

    def test_domain(self):
        with pytest.raises(DomainError):
            hy.check_spectral_resolvent(0.5, 0.0)


class TestSpectralProduct:
    def test_b_zero_bitwise_match(self):
        for a_shift in (-0.5, 0.25, 3.0):
            for r in (0.5, 1.0, 10.0):
                prod = hy.check_spectral_product(a_shift, r, 0.0)
                res = hy.check_spectral_resolvent(a_shift, r)
                assert prod.lhs == res.lhs
                assert prod.rhs == res.rhs

    def test_zero_a_example(self):
        rec = hy.check_spectral_product(0.0, 1.0, 1.0)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - math.pi * math.sqrt(2.0) / 3.0) < 1e-14

    def test_all_ones(self):
        rec = hy.check_spectral_product(1.0, 1.0, 1.0)
        assert rec.status == hy.PASS
        assert abs(rec.rhs - 2.0 * math.pi / 5.0) < 1e-14

    def test_denominator_positive_recorded(self):
        rec = hy.check_spectral_product(-0.5, 0.5, 2.0)
        assert rec.status == hy.PASS
        assert rec.metadata["denominator"] > 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            hy.check_spectral_product(0.5, 1.0, -0.2)


class TestSpectralKernel:
    def test_lower_boundary(self):
        rec = hy.check_spectral_kernel(PAIR.T, 2.0, PAIR)
        assert rec.status == hy.PASS

    def test_upper_boundary(self):
        rec = hy.check_spectral_kernel(PAIR.S, 2.0, PAIR)
        assert rec.status == hy.PASS

    def test_interior_example(self):
        rec = hy.check_spectral_kernel(0.375, 2.0, PAIR)
        assert rec.status == hy.PASS
        assert rec.rel_err <= 1e-8

    def test_matches_kernel_factors(self):
        i1, i2 = hy.kernel_factors(0.375, 2.0, PAIR)
        rec = hy.check_spectral_kernel(0.375, 2.0, PAIR)
        assert rec.rhs == i1 * i2

    def test_domain(self):
        with pytest.raises(DomainError):
            hy.check_spectral_kernel(0.2, 2.0, PAIR)
        with pytest.raises(DomainError):
            hy.check_spectral_kernel(0.375, -1.0, PAIR)


class TestQIntegral:
    def test_large_r(self):
        rec = hy.check_q_integral(50.0, PAIR)
        assert rec.status == hy.PASS
        assert rec.rel_err <= 1e-8

    def test_small_r_also_exact(self):
        rec = hy.check_q_integral(0.5, PAIR)
        assert rec.status == hy.PASS

    def test_defect_rate(self):
        # the integrated kernel defect shrinks like 1/r
        for pair in (PAIR, WIDE):
            d10 = hy.check_q_integral(10.0, pair).metadata["kernel_defect"]
            d100 = hy.check_q_integral(100.0, pair).metadata["kernel_defect"]
            assert 5.0 <= d10 / d100 <= 20.0

    def test_domain(self):
        with pytest.raises(DomainError):
            hy.check_q_integral(0.0, PAIR)


class TestObstruction:
    def test_large_r_integer_zero(self):
        rec = hy.check_obstruction_integer(100.0, PAIR)
        assert rec.status == hy.PASS
        assert rec.metadata["n_int"] == 0
        assert rec.metadata["n_dist"] <= 1e-6
        assert abs(rec.metadata["n_r"]) <= 1e-6

    def test_sum_identity_and_equal_magnitudes(self):
        rec = hy.check_obstruction_integer(100.0, PAIR)
        assert rec.abs_err <= 1e-8  # D1+D2+D3+D4 vs Q - closed form
        assert rec.metadata["d_abs_spread"] <= 1e-9
        assert rec.metadata["d_square_residual"] <= 1e-8

    def test_small_r_records_without_integer_assertion(self):
        rec = hy.check_obstruction_integer(0.5, PAIR)
        assert rec.status == hy.PASS
        assert "n_r" in rec.metadata

    def test_complex_root_regime(self):
        # below the double-root radius the roots are complex conjugates
        rec = hy.check_obstruction_integer(50.0, WIDE)
        assert rec.status == hy.PASS
        assert rec.metadata["n_dist"] <= 1e-6

    def test_degenerate_radius_raises(self):
        with pytest.raises(DegenerateConfigurationError):
            hy.check_obstruction_integer(8.0 + 6.0 * math.sqrt(2.0), PAIR)


class TestWeightedResidual:
    def test_vanishes(self):
        rec = hy.check_weighted_residual(1.0, PAIR)
        assert rec.status == hy.PASS
        assert abs(rec.lhs) <= 1e-6

    def test_unit_integral_against_closed_form(self):
        # the weight-only integral equals pi/(1+r) after normalization
        rec = hy.check_weighted_residual(10.0, PAIR)
        assert rec.metadata["unit_residual"] <= 1e-8

    def test_two_radii(self):
        for r in (1.0, 10.0):
            rec = hy.check_weighted_residual(r, WIDE)
            assert rec.status == hy.PASS

    def test_domain(self):
        with pytest.raises(DomainError):
            hy.check_weighted_residual(0.0, PAIR)


class TestCheckRecordInvariant:
    @settings(max_examples=200, deadline=None)
    @given(lhs=st.floats(-1e3, 1e3), rhs=st.floats(-1e3, 1e3),
           tol=st.floats(1e-12, 1e3))
    def test_status_rule(self, lhs, rhs, tol):
        rec = hy.build_record("x/y=1", lhs, rhs, tol)
        ok = rec.abs_err <= rec.tolerance or rec.rel_err <= rec.tolerance
        assert (rec.status == hy.PASS) == ok

    def test_unconverged_priority(self):
        rec = hy.build_record("x/y=1", 1.0, 1.0, 1e-9, converged=False)
        assert rec.status == hy.UNCONVERGED

    def test_consistency_flag(self):
        rec = hy.build_record("x/y=1", 1.0, 1.0, 1e-9, consistent=False)
        assert rec.status == hy.FAIL
