"""Closed-form bounds, instance normalization, and the certificate optimizer."""

import math
import warnings

import pytest

from nisim import (
    HcOptimizerConfig,
    collision_prob,
    combined_report,
    complement,
    hc_bounds,
    make_code,
    maximal_correlation_bounds,
    normalize_instance,
    star,
    subcube,
    symmetric_bounds,
    theorem1_bounds,
    theta_minus,
    theta_plus,
)
from nisim.errors import ParameterRangeError

from conftest import random_code


def apply_steps_to_codes(steps, code_a, code_b):
    """Mirror an instance normalization on explicit membership sets."""
    for step in steps:
        if step == "reflect-second-input":
            code_b = star(code_b)
        elif step == "complement-first":
            code_a = complement(code_a)
        elif step == "complement-second":
            code_b = complement(code_b)
        elif step == "swap":
            code_a, code_b = code_b, code_a
        else:
            raise AssertionError(f"unknown step {step}")
    return code_a, code_b


class TestNormalizeInstance:
    def test_already_normalized_is_untouched(self):
        a, b, rho, record = normalize_instance(0.2, 0.4, 0.7)
        assert (a, b, rho) == (0.2, 0.4, 0.7)
        assert record.steps == ()
        assert record.alpha == 1.0
        assert record.beta == 0.0

    def test_frozen_composite_case(self):
        a, b, rho, record = normalize_instance(0.7, 0.25, -0.4)
        assert abs(a - 0.25) <= 1e-15
        assert abs(b - 0.3) <= 1e-15
        assert rho == 0.4
        assert record.steps == (
            "reflect-second-input",
            "complement-first",
            "swap",
        )
        assert record.alpha == -1.0
        assert abs(record.beta - 0.25) <= 1e-15

    def test_output_always_normalized(self, rng):
        for _ in range(50):
            a = float(rng.uniform(0.01, 0.99))
            b = float(rng.uniform(0.01, 0.99))
            rho = float(rng.uniform(-1, 1))
            na, nb, nrho, _ = normalize_instance(a, b, rho)
            assert 0.0 <= na <= nb <= 0.5 + 1e-15
            assert 0.0 <= nrho <= 1.0

    def test_affine_map_tracks_explicit_codes(self, rng):
        for _ in range(30):
            n = 4
            code_a = random_code(rng, n)
            code_b = random_code(rng, n)
            rho = float(rng.uniform(-1, 1))
            a, b = code_a.density, code_b.density
            na, nb, nrho, record = normalize_instance(a, b, rho)
            if code_a.size == 16 or code_b.size == 16:
                continue
            norm_a, norm_b = apply_steps_to_codes(record.steps, code_a, code_b)
            assert abs(norm_a.density - na) <= 1e-12
            assert abs(norm_b.density - nb) <= 1e-12
            q_orig = collision_prob(code_a, code_b, rho)
            q_norm = collision_prob(norm_a, norm_b, nrho)
            assert abs(record.map_value(q_norm) - q_orig) <= 1e-12

    def test_map_interval_orders_endpoints(self):
        _, _, _, record = normalize_instance(0.7, 0.25, -0.4)
        lo, hi = record.map_interval(0.1, 0.2)
        assert lo <= hi
        assert abs(lo - (0.25 - 0.2)) <= 1e-15
        assert abs(hi - (0.25 - 0.1)) <= 1e-15


class TestThetaEnvelope:
    def test_balanced_values(self):
        for rho in (0.1, 0.5, 0.9):
            assert abs(theta_plus(0.5, rho) - (1 + rho) / 4) <= 1e-15
            assert abs(theta_minus(0.5, rho) - (1 - rho) / 4) <= 1e-15

    def test_order(self):
        for t in (0.05, 0.2, 0.5):
            for rho in (0.0, 0.3, 0.8, 1.0):
                lo = theta_minus(t, rho)
                hi = theta_plus(t, rho)
                assert 0.0 <= lo <= t * t <= hi <= t + 1e-15

    def test_perfect_correlation_reaches_density(self):
        for t in (0.1, 0.3, 0.5):
            assert abs(theta_plus(t, 1.0) - t) <= 1e-15
            assert theta_minus(t, 1.0) == 0.0

    def test_symmetric_bounds_are_the_envelope(self):
        for a in (0.125, 0.25, 0.5):
            for rho in (0.2, 0.6):
                lo, hi = symmetric_bounds(a, rho)
                assert lo == theta_minus(a, rho)
                assert hi == theta_plus(a, rho)


class TestTheorem1Bounds:
    def test_frozen_quarter_density(self):
        t = theorem1_bounds(0.25, 0.25, 0.5)
        assert t.upsilon1_lb == 0.0
        assert t.upsilon2_lb == 0.0
        assert abs(t.upsilon1_ub - 0.140625) <= 1e-15
        assert abs(t.upsilon2_ub - 0.140625) <= 1e-15

    def test_frozen_mild_correlation(self):
        t = theorem1_bounds(0.25, 0.25, 0.3)
        assert abs(t.upsilon1_lb - 0.01375) <= 1e-15
        assert abs(t.upsilon2_lb - 0.019375) <= 1e-15

    def test_balanced_case(self):
        for rho in (0.1, 0.5, 0.9):
            t = theorem1_bounds(0.5, 0.5, rho)
            assert abs(t.upsilon2_lb - (1 - rho) / 4) <= 1e-15
            assert abs(t.upsilon1_ub - (1 + rho) / 4) <= 1e-15
            assert abs(t.upsilon2_ub - (1 + rho) / 4) <= 1e-15

    def test_independent_case_collapses(self):
        t = theorem1_bounds(0.2, 0.3, 0.0)
        product = 0.2 * 0.3
        for value in t:
            assert abs(value - product) <= 1e-16

    def test_lower_bounds_incomparable(self):
        skew = theorem1_bounds(0.05, 0.45, 0.2)
        assert skew.upsilon1_lb > skew.upsilon2_lb + 1e-4
        even = theorem1_bounds(0.25, 0.25, 0.3)
        assert even.upsilon2_lb > even.upsilon1_lb + 1e-4

    def test_bounds_bracket_each_other(self, rng):
        for _ in range(50):
            a = float(rng.uniform(0.01, 0.5))
            b = float(rng.uniform(a, 0.5))
            rho = float(rng.uniform(0, 1))
            t = theorem1_bounds(a, b, rho)
            lb = max(t.upsilon1_lb, t.upsilon2_lb)
            ub = min(t.upsilon1_ub, t.upsilon2_ub)
            assert 0.0 <= lb <= ub <= min(a, b) + 1e-12

    def test_requires_normalized_input(self):
        with pytest.raises(ParameterRangeError):
            theorem1_bounds(0.6, 0.7, 0.5)
        with pytest.raises(ParameterRangeError):
            theorem1_bounds(0.4, 0.3, 0.5)
        with pytest.raises(ParameterRangeError):
            theorem1_bounds(0.3, 0.4, -0.5)


class TestMaximalCorrelationBounds:
    def test_balanced_frozen(self):
        assert maximal_correlation_bounds(0.5, 0.5, 0.5) == (0.125, 0.375)

    def test_general_form(self):
        a, b, rho = 0.25, 0.5, 0.4
        lo, hi = maximal_correlation_bounds(a, b, rho)
        dev = math.sqrt(a * (1 - a) * b * (1 - b)) * rho
        assert abs(lo - (a * b - dev)) <= 1e-15
        assert abs(hi - (a * b + dev)) <= 1e-15

    def test_clamped_to_sandwich(self):
        lo, hi = maximal_correlation_bounds(0.05, 0.05, 0.9)
        assert lo == 0.0
        assert hi <= 0.05

    def test_contains_theorem1_interval(self, rng):
        for _ in range(30):
            a = float(rng.uniform(0.02, 0.5))
            b = float(rng.uniform(a, 0.5))
            rho = float(rng.uniform(0, 1))
            mlo, mhi = maximal_correlation_bounds(a, b, rho)
            t = theorem1_bounds(a, b, rho)
            assert t.upsilon1_ub <= mhi + 1e-12

    def test_rejects_negative_rho(self):
        with pytest.raises(ParameterRangeError):
            maximal_correlation_bounds(0.3, 0.6, -0.8)


class TestHcBounds:
    def test_independent_case_is_exact(self):
        product = 0.2 * 0.4
        assert hc_bounds(0.2, 0.4, 0.0) == (product, product)

    def test_upper_bound_respects_achievable_points(self):
        for rho in (0.3, 0.6):
            lb, ub = hc_bounds(0.25, 0.25, rho)
            attain_hi = ((1 + rho) / 4) ** 2
            attain_lo = ((1 - rho) / 4) ** 2
            assert ub >= attain_hi - 1e-9
            assert lb <= attain_lo + 1e-9
            assert lb >= 0.0

    def test_balanced_case_matches_closed_form(self):
        lb, ub = hc_bounds(0.5, 0.5, 0.5)
        assert abs(lb - 0.125) <= 1e-4
        assert abs(ub - 0.375) <= 1e-4

    def test_perfect_correlation_warns(self):
        with pytest.warns(RuntimeWarning):
            hc_bounds(0.25, 0.25, 1.0)

    def test_interval_ordered(self, rng):
        for _ in range(10):
            a = float(rng.uniform(0.05, 0.5))
            b = float(rng.uniform(a, 0.5))
            rho = float(rng.uniform(0.05, 0.95))
            lb, ub = hc_bounds(a, b, rho)
            assert 0.0 <= lb <= ub <= min(a, b) + 1e-9

    def test_config_guards(self):
        with pytest.raises(ParameterRangeError):
            HcOptimizerConfig(grid_points=1)
        with pytest.raises(ParameterRangeError):
            HcOptimizerConfig(rel_tol=0.0)

    def test_coarse_config_still_valid(self):
        cfg = HcOptimizerConfig(grid_points=9, refine_sweeps=40)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            lb, ub = hc_bounds(0.25, 0.25, 0.5, config=cfg)
        assert lb <= 0.140625 + 1e-9 <= ub + 2e-1
        assert ub >= 0.140625 - 1e-9

    def test_parameter_guards(self):
        with pytest.raises(ParameterRangeError):
            hc_bounds(0.0, 0.5, 0.5)
        with pytest.raises(ParameterRangeError):
            hc_bounds(0.3, 0.4, 1.5)


class TestCombinedReport:
    def test_interval_well_formed_across_grid(self):
        for a in (0.1, 0.35, 0.75, 1.0):
            for b in (0.2, 0.5, 0.9):
                for rho in (-0.7, 0.0, 0.4):
                    rep = combined_report(a, b, rho)
                    lo_sandwich = max(0.0, a + b - 1.0)
                    hi_sandwich = min(a, b)
                    assert lo_sandwich - 1e-12 <= rep.combined_lb
                    assert rep.combined_lb <= rep.combined_ub + 1e-9
                    assert rep.combined_ub <= hi_sandwich + 1e-12

    def test_full_density_pins_the_answer(self):
        rep = combined_report(1.0, 0.5, 0.3)
        assert rep.combined_lb == rep.combined_ub == 0.5

    def test_independent_case_pins_the_answer(self):
        rep = combined_report(0.3, 0.8, 0.0)
        assert abs(rep.combined_lb - 0.24) <= 1e-12
        assert abs(rep.combined_ub - 0.24) <= 1e-12

    def test_report_carries_normalization(self):
        rep = combined_report(0.5, 0.25, -0.6)
        assert rep.transform.steps == ("reflect-second-input", "swap")
        assert rep.original_a == 0.5
        assert rep.original_rho == -0.6
        assert (rep.a, rep.b) == (0.25, 0.5)
        assert rep.rho == 0.6

    def test_raw_holds_prenormalized_interval(self):
        rep = combined_report(0.25, 0.25, 0.5)
        assert "combined_lb_normalized" in rep.raw
        assert "combined_ub_original" in rep.raw

    def test_symmetric_point_value(self):
        rep = combined_report(0.25, 0.25, 0.5)
        assert abs(rep.combined_ub - 0.140625) <= 1e-12
        assert rep.combined_lb <= 0.00625 + 1e-9
