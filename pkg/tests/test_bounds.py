"""Unit tests for bounds.py"""

import dataclasses
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from bounds import (
    Method,
    OptimizeOptions,
    Side,
    TailBound,
    bound_at,
    certify_compact_support,
    certify_half_line,
    compute_bound,
    corollary1_bound,
    fit_loglog_slope,
    optimize_bound,
    remark1_majorant_check,
    s_domain,
    tail_curve,
    theorem1_bound,
    theorem2_bound,
    theorem3_left,
    theorem3_right,
)
from cf_core import CharFn, empirical_cf
from errors import (
    AnalyticityDomainError,
    BoundOverflowError,
    DivisionDomainError,
    InternalConsistencyError,
    ParameterDomainError,
    RejectedPolynomialError,
    UnsupportedError,
)
from oracle import empirical_tail
from search import log_grid
from trigpoly import TrigPoly, sin_power_coeffs

ONE_MINUS_COS = TrigPoly((1.0, -1.0))


class TestMethod:
    """Tests for method names and sides."""

    @pytest.mark.unit
    def test_parse(self):
        """Test parsing method names in either spelling."""
        assert Method.parse("theorem3-right") is Method.THEOREM3_RIGHT
        assert Method.parse("THEOREM3_LEFT") is Method.THEOREM3_LEFT
        assert Method.parse(Method.THEOREM1) is Method.THEOREM1

    @pytest.mark.unit
    def test_unknown(self):
        """Test that an unknown method name is rejected."""
        with pytest.raises(ParameterDomainError, match="unknown method"):
            Method.parse("theorem4")

    @pytest.mark.unit
    def test_sides(self):
        """Test the tail side of each method."""
        assert Method.THEOREM1.side is Side.TWO_SIDED
        assert Method.THEOREM3_RIGHT.side is Side.RIGHT
        assert Method.THEOREM3_LEFT.side is Side.LEFT


class TestTheorem1:
    """Tests for the trigonometric-polynomial bound."""

    @pytest.mark.unit
    def test_cauchy_anchor(self, cauchy_cf):
        """Test the Cauchy bound with 1 - cos at s = 1 against 2/e."""
        result = theorem1_bound(cauchy_cf, ONE_MINUS_COS, 1.0)
        assert result.threshold == pytest.approx(2 * math.pi)
        assert result.side is Side.TWO_SIDED
        assert result.method is Method.THEOREM1
        assert result.bound == pytest.approx(2 / math.e, abs=1e-9)
        assert result.quad_error >= 0.0

    @pytest.mark.unit
    def test_point_mass_is_zero(self, catalog):
        """Test that a point mass at zero gives a zero bound."""
        result = theorem1_bound(catalog("point_mass:0"), ONE_MINUS_COS, 1.0)
        assert result.bound == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.unit
    def test_constant_polynomial_clamps(self, normal_cf):
        """Test that a constant polynomial gives raw bound 2 clamped to 1."""
        result = theorem1_bound(normal_cf, TrigPoly((1.0,)), 2.0)
        assert result.raw_bound == pytest.approx(2.0)
        assert result.bound == 1.0

    @pytest.mark.unit
    def test_sine_terms_use_imaginary_part(self, catalog):
        """For exponential(1), Im f(u) = u / (1 + u^2) integrates to ln(1 + s^2) / 2."""
        cf = catalog("exponential:1")
        p = TrigPoly((1.0, 0.0), (0.5,))
        s = 1.5
        expected = 2 / s * (s + 0.5 * 0.5 * math.log(1 + s * s))
        assert theorem1_bound(cf, p, s).raw_bound == pytest.approx(expected, abs=1e-9)

    @pytest.mark.unit
    def test_rejects_negative_polynomial(self, cauchy_cf):
        """Test that a polynomial with negative values is rejected."""
        with pytest.raises(RejectedPolynomialError, match="negative"):
            theorem1_bound(cauchy_cf, TrigPoly((1.0, 2.0)), 1.0)

    @pytest.mark.unit
    def test_override_logs_warning(self, cauchy_cf, caplog):
        """Test that disabling the check logs a warning and still computes."""
        result = theorem1_bound(cauchy_cf, TrigPoly((1.0, 2.0)), 1.0, check_poly=False)
        assert "overridden" in caplog.text
        assert result.raw_bound > 0

    @pytest.mark.unit
    @pytest.mark.parametrize("a0", [0.0, -1.0])
    def test_rejects_non_positive_a0(self, cauchy_cf, a0):
        """Test that a_0 <= 0 is rejected."""
        with pytest.raises(DivisionDomainError):
            theorem1_bound(cauchy_cf, TrigPoly((a0,)), 1.0)

    @pytest.mark.unit
    @pytest.mark.parametrize("s", [0.0, -1.0, float("inf"), float("nan")])
    def test_rejects_bad_s(self, cauchy_cf, s):
        """Test that non-positive or non-finite s is rejected."""
        with pytest.raises(ParameterDomainError):
            theorem1_bound(cauchy_cf, ONE_MINUS_COS, s)

    @pytest.mark.unit
    @settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(s=st.floats(min_value=0.05, max_value=10.0))
    def test_clamping(self, cauchy_cf, s):
        """Test that bounds are clamped into [0, 1]."""
        result = theorem1_bound(cauchy_cf, ONE_MINUS_COS, s)
        assert 0.0 <= result.bound <= 1.0
        assert result.raw_bound >= result.bound or result.raw_bound < 0

    @pytest.mark.unit
    @pytest.mark.parametrize("family,c", [("normal:0,{}", 2.0), ("cauchy:0,{}", 3.0), ("laplace:0,{}", 0.5)])
    @pytest.mark.parametrize("s", [0.3, 1.0])
    def test_scale_covariance(self, catalog, family, c, s):
        """bound(f(c.), s) = bound(f, c s)."""
        scaled = theorem1_bound(catalog(family.format(c)), ONE_MINUS_COS, s)
        base = theorem1_bound(catalog(family.format(1)), ONE_MINUS_COS, c * s)
        assert scaled.raw_bound == pytest.approx(base.raw_bound, abs=1e-10)
        assert scaled.threshold == pytest.approx(c * base.threshold)


class TestCorollary1:
    """Tests for the sin^(2k) bound and its difference form."""

    @pytest.mark.unit
    def test_cauchy_k1(self, cauchy_cf):
        """Test the Cauchy sin^2 bound against its closed form."""
        result = corollary1_bound(cauchy_cf, 1, 1.0)
        expected = 4 * (0.5 - 0.25 * (1 - math.exp(-2)))
        assert result.raw_bound == pytest.approx(expected, abs=1e-9)
        assert result.raw_bound == pytest.approx(1.135335, abs=1e-6)
        assert result.bound == 1.0
        assert result.k == 1
        assert result.to_record()["k"] == 1

    @pytest.mark.unit
    @pytest.mark.parametrize("k", [1, 3, 6])
    def test_point_mass_is_zero(self, catalog, k):
        """Test that a point mass at zero gives a zero bound for every k."""
        assert corollary1_bound(catalog("point_mass:0"), k, 0.7).bound == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.unit
    def test_matches_theorem1(self, cauchy_cf):
        """Test agreement with theorem1 using the sin^4 polynomial."""
        cor = corollary1_bound(cauchy_cf, 2, 0.5)
        thm = theorem1_bound(cauchy_cf, sin_power_coeffs(2), 0.5)
        assert cor.raw_bound == pytest.approx(thm.raw_bound, abs=1e-9)
        assert cor.method is Method.COROLLARY1

    @pytest.mark.unit
    @pytest.mark.parametrize("family", ["cauchy:0,1", "normal:0,1", "laplace:0,1", "uniform:-1,1"])
    @pytest.mark.parametrize("k", range(1, 7))
    def test_difference_form_agrees(self, catalog, family, k):
        """Both computation paths agree or the call raises."""
        for s in (0.3, 1.0, 2.5):
            corollary1_bound(catalog(family), k, s)

    @pytest.mark.unit
    def test_disagreement_is_an_internal_error(self, cauchy_cf, mocker):
        """Test that disagreeing forms raise an internal consistency error."""
        mocker.patch("bounds.central_difference", return_value=1.0)
        with pytest.raises(InternalConsistencyError, match="disagree"):
            corollary1_bound(cauchy_cf, 1, 1.0)

    @pytest.mark.unit
    @pytest.mark.parametrize("k", [0, 16])
    def test_k_range(self, cauchy_cf, k):
        """Test that k outside the supported range is rejected."""
        with pytest.raises(ParameterDomainError):
            corollary1_bound(cauchy_cf, k, 1.0)

    @pytest.mark.unit
    def test_empirical_cf_skips_quadrature(self, mocker):
        """Test that wide empirical samples use the closed-form integrals and stay sound."""
        samples = np.random.default_rng(5).standard_cauchy(300) * 100.0
        cf = empirical_cf(samples)
        spy = mocker.spy(sys.modules["bounds"], "integrate")
        for k in (1, 3):
            result = corollary1_bound(cf, k, 2.0)
            assert result.bound + 1e-9 >= empirical_tail(samples, result.threshold, Side.TWO_SIDED)
        assert spy.call_count == 0

    @pytest.mark.unit
    def test_closed_form_agrees_with_quadrature(self):
        """Test that empirical bounds agree with and without the closed-form integrals."""
        cf = empirical_cf(np.random.default_rng(8).standard_normal(20))
        plain = dataclasses.replace(cf, integral_eval=None)
        for s in (0.5, 2.0):
            assert theorem1_bound(cf, ONE_MINUS_COS, s).raw_bound == pytest.approx(
                theorem1_bound(plain, ONE_MINUS_COS, s).raw_bound, abs=1e-8
            )
            assert corollary1_bound(cf, 2, s).raw_bound == pytest.approx(
                corollary1_bound(plain, 2, s).raw_bound, abs=1e-8
            )


class TestRemark1:
    """Tests for the moment majorant of central differences."""

    @pytest.mark.unit
    def test_normal(self, normal_cf):
        """Test the second difference of the normal CF against its majorant."""
        report = remark1_majorant_check(normal_cf, 1, [0.1])
        row = report.rows[0]
        assert abs(row.difference) == pytest.approx(2 * (1 - math.exp(-0.005)), abs=1e-14)
        assert abs(row.difference) == pytest.approx(0.009975, abs=1e-6)
        assert row.majorant == pytest.approx(0.01)
        assert report.passed

    @pytest.mark.unit
    def test_point_mass(self, catalog):
        """Test that differences of a point mass at zero vanish."""
        report = remark1_majorant_check(catalog("point_mass:0"), 2, [0.5, 3.0])
        assert report.passed
        assert all(row.difference == 0.0 for row in report.rows)

    @pytest.mark.unit
    def test_uniform(self, uniform_cf):
        """Test the uniform second difference at step 0.5."""
        report = remark1_majorant_check(uniform_cf, 1, [0.5])
        assert abs(report.rows[0].difference) <= 0.25 / 3
        assert report.passed

    @pytest.mark.unit
    def test_missing_moments(self, cauchy_cf):
        """Test that a CF without moments is refused."""
        with pytest.raises(UnsupportedError):
            remark1_majorant_check(cauchy_cf, 1, [0.1])


class TestTheorem2:
    """Tests for the two-sided exponential bound."""

    @pytest.mark.unit
    def test_normal_anchor(self, normal_cf):
        """Test the normal bound at A = 4, s = 1."""
        result = theorem2_bound(normal_cf, 4.0, 1.0)
        assert result.bound == pytest.approx(0.033484, abs=1e-6)
        assert result.threshold == 4.0
        assert result.s_used == 1.0

    @pytest.mark.unit
    def test_laplace_anchor(self, catalog):
        """Test the Laplace bound against its closed form."""
        numerator = 0.5 * math.log(3) - 0.5
        denominator = 0.5 * (math.sinh(1.5) / 1.5 - 1)
        result = theorem2_bound(catalog("laplace:0,1"), 3.0, 0.5)
        assert result.bound == pytest.approx(numerator / denominator, abs=1e-9)
        assert result.bound == pytest.approx(0.235051, abs=1e-6)

    @pytest.mark.unit
    @pytest.mark.parametrize("A,s", [(1.0, 1.0), (0.1, 5.0), (50.0, 0.01)])
    def test_point_mass_is_zero(self, catalog, A, s):
        """Test that a point mass at zero gives a zero bound."""
        assert theorem2_bound(catalog("point_mass:0"), A, s).bound == 0.0

    @pytest.mark.unit
    def test_small_product_uses_series(self, normal_cf):
        """A*s = 1e-4 is well inside the series branch of sinh(x)/x - 1."""
        result = theorem2_bound(normal_cf, 1e-3, 0.1)
        assert math.isfinite(result.raw_bound)
        assert result.bound == 1.0

    @pytest.mark.unit
    def test_not_analytic(self, cauchy_cf):
        """Test that a CF with zero radius is refused."""
        with pytest.raises(AnalyticityDomainError, match="R=0"):
            theorem2_bound(cauchy_cf, 1.0, 0.1)

    @pytest.mark.unit
    def test_s_beyond_radius(self, catalog):
        """Test that s beyond the radius is refused."""
        with pytest.raises(AnalyticityDomainError, match="exceeds analyticity radius R=1"):
            theorem2_bound(catalog("laplace:0,1"), 3.0, 1.0)

    @pytest.mark.unit
    def test_no_imaginary_axis(self):
        """Test that a CF without a continuation is unsupported."""
        cf = CharFn(eval=lambda t: np.exp(-np.asarray(t, dtype=float) ** 2 / 2) + 0j, label="bare",
                    analyticity_radius=math.inf, lower_strip=math.inf, upper_strip=math.inf)
        with pytest.raises(UnsupportedError):
            theorem2_bound(cf, 1.0, 1.0)

    @pytest.mark.unit
    def test_exponent_overflow(self, normal_cf):
        """Test that an overflowing exponential raises."""
        with pytest.raises(BoundOverflowError, match="smaller s"):
            theorem2_bound(normal_cf, 1.0, 800.0)

    @pytest.mark.unit
    def test_imaginary_axis_overflow(self, normal_cf):
        """Test that an overflowing continuation raises."""
        with pytest.raises(BoundOverflowError, match="smaller s"):
            theorem2_bound(normal_cf, 0.1, 60.0)

    @pytest.mark.unit
    def test_inconsistent_imaginary_axis(self):
        """Test that a continuation inconsistent with f is flagged."""
        cf = CharFn(
            eval=lambda t: np.ones_like(np.asarray(t, dtype=float)) + 0j, label="broken",
            imag_axis_eval=lambda u: np.full_like(np.asarray(u, dtype=float), 0.5),
            analyticity_radius=math.inf, lower_strip=math.inf, upper_strip=math.inf,
        )
        with pytest.raises(InternalConsistencyError):
            theorem2_bound(cf, 1.0, 1.0)


class TestTheorem3:
    """Tests for the one-sided exponential bounds."""

    @pytest.mark.unit
    def test_exponential_right_anchor(self, exponential_cf):
        """Test the exponential right-tail bound against its closed form."""
        result = theorem3_right(exponential_cf, 5.0, 0.5, F0plus=0.0)
        expected = 5 / (math.exp(2.5) - 3.5) * (math.log(2) - 0.5)
        assert result.bound == pytest.approx(expected, abs=1e-10)
        assert result.bound == pytest.approx(0.111229, abs=1e-6)
        assert result.side is Side.RIGHT

    @pytest.mark.unit
    def test_right_uses_catalog_probability(self, exponential_cf):
        """Test that a known F(+0) is taken from the CF."""
        explicit = theorem3_right(exponential_cf, 5.0, 0.5, F0plus=0.0)
        implicit = theorem3_right(exponential_cf, 5.0, 0.5)
        assert implicit.raw_bound == explicit.raw_bound

    @pytest.mark.unit
    def test_right_point_mass(self, catalog):
        """Test the right-tail bound for a point mass with F(+0) = 1."""
        result = theorem3_right(catalog("point_mass:0"), 1.0, 10.0, F0plus=1.0)
        assert result.raw_bound == pytest.approx(10.0 / (math.exp(10) - 11), rel=1e-9)

    @pytest.mark.unit
    def test_exponential_left_anchor(self, exponential_cf):
        """Test the exponential left-tail bound against its closed form."""
        result = theorem3_left(exponential_cf, 2.0, 3.0, F0minus=0.0)
        expected = math.log(4) * 2 / (math.exp(6) - 7)
        assert result.bound == pytest.approx(expected, abs=1e-10)
        assert result.side is Side.LEFT

    @pytest.mark.unit
    def test_left_point_mass_clamps(self, catalog):
        """Test that the left-tail bound of a point mass is clamped to 1."""
        result = theorem3_left(catalog("point_mass:0"), 1.0, 1.0, F0minus=0.0)
        assert result.raw_bound == pytest.approx(1 / (math.e - 2), rel=1e-9)
        assert result.bound == 1.0

    @pytest.mark.unit
    @pytest.mark.parametrize("A,s", [(1.0, 0.3), (2.0, 0.7), (4.0, 0.9)])
    def test_laplace_mirror(self, catalog, A, s):
        """Test that left and right bounds agree for the symmetric Laplace law."""
        cf = catalog("laplace:0,1")
        left = theorem3_left(cf, A, s, 0.5)
        right = theorem3_right(cf, A, s, 0.5)
        assert left.raw_bound == pytest.approx(right.raw_bound, abs=1e-12)

    @pytest.mark.unit
    def test_conservative_default_without_metadata(self):
        """Unknown F(+0) falls back to 1, which can only enlarge the bound."""
        base = dict(
            eval=lambda t: 1.0 / (1.0 - 1j * np.asarray(t, dtype=float)),
            imag_axis_eval=lambda u: 1.0 / (1.0 + np.asarray(u, dtype=float)),
            analyticity_radius=1.0, lower_strip=1.0, upper_strip=math.inf,
        )
        unknown = theorem3_right(CharFn(label="no-metadata", **base), 5.0, 0.5)
        known = theorem3_right(CharFn(label="metadata", prob_nonpositive=0.0, **base), 5.0, 0.5)
        assert unknown.raw_bound > known.raw_bound

    @pytest.mark.unit
    def test_strip_violation(self, exponential_cf):
        """Test that s outside the strip is refused."""
        with pytest.raises(AnalyticityDomainError, match="strip"):
            theorem3_right(exponential_cf, 5.0, 1.0)

    @pytest.mark.unit
    def test_probability_validated(self, exponential_cf):
        """Test that F(-0) must be a probability."""
        with pytest.raises(ParameterDomainError):
            theorem3_left(exponential_cf, 1.0, 1.0, F0minus=1.5)

    @pytest.mark.unit
    def test_small_s_blows_up(self, exponential_cf):
        """With F(+0) = 1 the bound grows like 2/(sA) as s shrinks."""
        at_1e3 = theorem3_right(exponential_cf, 5.0, 1e-3, F0plus=1.0)
        at_1e4 = theorem3_right(exponential_cf, 5.0, 1e-4, F0plus=1.0)
        assert at_1e3.raw_bound == pytest.approx(400.0, rel=0.01)
        assert at_1e4.raw_bound > 1e3
        assert at_1e4.bound == 1.0


class TestOptimizeBound:
    """Tests for the parameter optimiser."""

    @pytest.mark.unit
    def test_normal_theorem2(self, normal_cf):
        """Test that the optimum beats s = 1 and stays above the exact tail."""
        best = optimize_bound(normal_cf, "theorem2", 4.0)
        assert best.bound <= theorem2_bound(normal_cf, 4.0, 1.0).bound
        assert best.bound >= 2 * 3.1671e-5

    @pytest.mark.unit
    def test_not_worse_than_grid(self, catalog):
        """Test that the optimum is no worse than the grid minimum."""
        cf = catalog("laplace:0,1")
        upper = s_domain(cf, Method.THEOREM2, 3.0)
        grid_best = min(theorem2_bound(cf, 3.0, float(s)).raw_bound for s in log_grid(upper * 1e-4, upper, 64))
        assert optimize_bound(cf, Method.THEOREM2, 3.0).raw_bound <= grid_best

    @pytest.mark.unit
    def test_corollary1_scans_k(self, cauchy_cf):
        """Test that the k scan picks the smallest bound."""
        best = optimize_bound(cauchy_cf, "corollary1", 2 * math.pi)
        scan = [corollary1_bound(cauchy_cf, k, 1.0).raw_bound for k in range(1, 9)]
        assert best.raw_bound == min(scan)
        assert best.k == scan.index(min(scan)) + 1

    @pytest.mark.unit
    def test_theorem1_has_no_search(self, cauchy_cf):
        """Test that theorem1 uses s = 2*pi/A directly."""
        best = optimize_bound(cauchy_cf, "theorem1", 2 * math.pi, OptimizeOptions(poly=ONE_MINUS_COS))
        assert best.s_used == pytest.approx(1.0)
        assert best.bound == pytest.approx(2 / math.e, abs=1e-9)

    @pytest.mark.unit
    def test_point_mass(self, catalog):
        """Test that a point mass at zero optimises to zero."""
        assert optimize_bound(catalog("point_mass:0"), "theorem2", 1.0).bound == 0.0

    @pytest.mark.unit
    def test_empty_domain(self, cauchy_cf):
        """Test that an empty s domain is unsupported."""
        with pytest.raises(UnsupportedError):
            optimize_bound(cauchy_cf, "theorem2", 1.0)

    @pytest.mark.unit
    def test_one_sided(self, exponential_cf):
        """Test optimising the right-tail bound."""
        best = optimize_bound(exponential_cf, "theorem3-right", 5.0)
        assert best.side is Side.RIGHT
        assert 0 < best.s_used < 1.0
        assert best.bound <= theorem3_right(exponential_cf, 5.0, 0.5).bound
        assert best.bound >= math.exp(-5)

    @pytest.mark.unit
    def test_deterministic(self, normal_cf):
        """Test that repeated optimisations agree."""
        assert optimize_bound(normal_cf, "theorem2", 3.0) == optimize_bound(normal_cf, "theorem2", 3.0)

    @pytest.mark.unit
    def test_skips_infeasible_points(self, normal_cf, mocker):
        """Test that every grid point is tried."""
        spy = mocker.spy(sys.modules["bounds"], "theorem2_bound")
        optimize_bound(normal_cf, "theorem2", 2.0, OptimizeOptions(grid_points=16, golden_iterations=5))
        assert spy.call_count >= 16


class TestTailCurve:
    """Tests for tail_curve and slope fitting."""

    @pytest.mark.unit
    def test_point_mass(self, catalog):
        """Test a tail curve of a point mass at zero."""
        curve = tail_curve(catalog("point_mass:0"), "corollary1", [10.0, 100.0], OptimizeOptions(k=1))
        assert [b.bound for b in curve] == pytest.approx([0.0, 0.0], abs=1e-12)

    @pytest.mark.unit
    def test_requires_ascending(self, cauchy_cf):
        """Test that thresholds must ascend."""
        with pytest.raises(ParameterDomainError, match="ascending"):
            tail_curve(cauchy_cf, "corollary1", [10.0, 5.0])

    @pytest.mark.unit
    def test_fit_slope(self):
        """Test the fitted slope of an exact power law."""
        curve = [
            TailBound(threshold=a, side=Side.TWO_SIDED, bound=1.0, raw_bound=3.0 * a ** -1.5,
                      method=Method.COROLLARY1, s_used=2 * math.pi / a)
            for a in (10.0, 20.0, 50.0, 100.0)
        ]
        assert fit_loglog_slope(curve) == pytest.approx(-1.5)

    @pytest.mark.unit
    def test_fit_needs_positive_bounds(self):
        """Test that zero bounds cannot be fitted."""
        zero = TailBound(threshold=1.0, side=Side.TWO_SIDED, bound=0.0, raw_bound=0.0,
                         method=Method.THEOREM1, s_used=1.0)
        with pytest.raises(ParameterDomainError):
            fit_loglog_slope([zero, zero])


class TestComputeBound:
    """Tests for the dispatcher."""

    @pytest.mark.unit
    def test_theorem1_from_A(self, cauchy_cf):
        """Test that theorem1 derives s from A."""
        result = compute_bound(cauchy_cf, "theorem1", A=2 * math.pi)
        assert result.s_used == pytest.approx(1.0)

    @pytest.mark.unit
    def test_theorem1_inconsistent(self, cauchy_cf):
        """Test that A and s must satisfy A = 2*pi/s."""
        with pytest.raises(ParameterDomainError, match="2\\*pi/s"):
            compute_bound(cauchy_cf, "theorem1", A=1.0, s=1.0)

    @pytest.mark.unit
    def test_theorem1_needs_a_parameter(self, cauchy_cf):
        """Test that theorem1 needs A or s."""
        with pytest.raises(ParameterDomainError):
            compute_bound(cauchy_cf, "theorem1")

    @pytest.mark.unit
    def test_explicit_s(self, exponential_cf):
        """Test dispatch with an explicit s."""
        result = compute_bound(exponential_cf, "theorem3-right", A=5.0, s=0.5)
        assert result.bound == pytest.approx(0.111229, abs=1e-6)

    @pytest.mark.unit
    def test_exponential_needs_A(self, normal_cf):
        """Test that the exponential bounds need A."""
        with pytest.raises(ParameterDomainError):
            compute_bound(normal_cf, "theorem2", s=1.0)

    @pytest.mark.unit
    def test_bound_at_rejects_trig_methods(self, cauchy_cf):
        """Test that bound_at only accepts exponential methods."""
        with pytest.raises(ParameterDomainError):
            bound_at(cauchy_cf, Method.THEOREM1, 1.0, 1.0)


class TestCertify:
    """Tests for the support certificates."""

    @pytest.mark.unit
    @pytest.mark.slow
    def test_uniform_certified(self, uniform_cf):
        """Test that uniform(-1,1) is certified at A = 1.5."""
        cert = certify_compact_support(uniform_cf, 1.5, 1e-6, 200.0)
        assert cert.certified
        assert cert.best_bound < 1e-6
        assert cert.side is Side.TWO_SIDED

    @pytest.mark.unit
    @pytest.mark.slow
    def test_uniform_not_certified(self, uniform_cf):
        """Test that uniform(-1,1) is not certified at A = 0.8."""
        cert = certify_compact_support(uniform_cf, 0.8, 1e-6, 200.0)
        assert not cert.certified
        assert cert.best_bound >= 0.2 - 1e-9

    @pytest.mark.unit
    def test_point_mass(self, catalog):
        """Test that a point mass is certified with a zero bound."""
        cert = certify_compact_support(catalog("point_mass:0"), 0.1, 1e-12, 200.0)
        assert cert.certified
        assert cert.best_bound == 0.0

    @pytest.mark.unit
    @pytest.mark.parametrize("text", ["cauchy:0,1", "laplace:0,1"])
    def test_requires_entire_cf(self, catalog, text):
        """Test that certification requires an entire CF."""
        with pytest.raises(UnsupportedError, match="not entire"):
            certify_compact_support(catalog(text), 1.0, 1e-6, 200.0)

    @pytest.mark.unit
    def test_half_line_left(self, exponential_cf):
        """Test left half-line certification for exponential(1)."""
        cert = certify_half_line(exponential_cf, 0.5, "left", 1e-6, 200.0)
        assert cert.certified
        assert cert.side is Side.LEFT

    @pytest.mark.unit
    def test_half_line_needs_infinite_strip(self, exponential_cf):
        """Test that half-line certification needs an infinite strip."""
        with pytest.raises(UnsupportedError, match="strip"):
            certify_half_line(exponential_cf, 0.5, "right", 1e-6, 200.0)

    @pytest.mark.unit
    def test_record(self, catalog):
        """Test the keys of a certificate record."""
        cert = certify_compact_support(catalog("point_mass:0"), 0.1, 1e-12, 10.0)
        record = cert.to_record()
        assert set(record) == {"A", "certified", "best_bound", "s_at_best", "s_max_probed", "tol", "side", "distribution"}
        assert record["side"] == "two_sided"
