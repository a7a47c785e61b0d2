import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plaplab import (
    DomainError,
    Nonlinearity,
    ProblemParams,
    Verdict,
    classify_regime,
    decay_exponent,
    exponent_report,
    fractional_dimension,
    gelfand_upper_dimension,
    power_exponents,
)


class TestFractionalDimension:
    @pytest.mark.parametrize(
        "p,alpha,n,expected",
        [
            (2.0, 0.0, 10.0, 10.0),   # alpha=0 is the identity
            (2.0, 2.0, 5.0, 3.5),     # 2*7/4
            (3.0, 0.0, 7.0, 7.0),
        ],
    )
    def test_values(self, p, alpha, n, expected):
        assert fractional_dimension(ProblemParams(p, alpha, n)) == pytest.approx(
            expected, abs=1e-14
        )

    def test_rejects_nonpositive_p_plus_alpha(self):
        with pytest.raises(DomainError):
            ProblemParams(2.0, -2.0, 5.0)

    @given(
        p=st.floats(2.0, 4.0),
        alpha=st.floats(0.0, 3.0),
        n=st.floats(2.5, 30.0),
        dn=st.floats(0.01, 5.0),
    )
    @settings(max_examples=60, derandomize=True)
    def test_identity_at_zero_weight_and_monotone_in_n(self, p, alpha, n, dn):
        base = ProblemParams(p, 0.0, n)
        assert fractional_dimension(base) == pytest.approx(n, rel=1e-14)
        lo = fractional_dimension(ProblemParams(p, alpha, n))
        hi = fractional_dimension(ProblemParams(p, alpha, n + dn))
        assert hi > lo


class TestDecayExponent:
    def test_vanishes_at_window_edge(self):
        # n = 4(p+alpha)/(p-1)+p makes the exponent zero
        assert decay_exponent(ProblemParams(2.0, 0.0, 10.0)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_supercritical_value(self):
        expected = 0.5 * (-8.0 + 2.0 * math.sqrt(11.0))
        assert decay_exponent(ProblemParams(2.0, 0.0, 12.0)) == pytest.approx(
            expected, abs=1e-14
        )

    def test_low_dimension_value(self):
        # (1/2)(p+2-n + 2 sqrt(n-1)) at p=2, alpha=0, n=3
        expected = 0.5 * (1.0 + 2.0 * math.sqrt(2.0))
        assert decay_exponent(ProblemParams(2.0, 0.0, 3.0)) == pytest.approx(
            expected, abs=1e-14
        )

    def test_negative_radicand_rejected(self):
        # below the admissibility bound n > 1 - alpha + alpha/p
        with pytest.raises(DomainError):
            decay_exponent(ProblemParams(2.0, 0.0, 0.5))

    def test_zero_exactly_at_upper_dimension_generic_params(self):
        for p, alpha in [(2.0, 0.0), (2.5, 1.0), (3.0, 2.5), (4.0, 0.3)]:
            n_star = gelfand_upper_dimension(p, alpha)
            val = decay_exponent(ProblemParams(p, alpha, n_star))
            assert abs(val) <= 1e-12


class TestGelfandUpperDimension:
    @pytest.mark.parametrize(
        "p,alpha,expected", [(2.0, 0.0, 10.0), (2.0, 2.0, 18.0), (3.0, 0.0, 9.0)]
    )
    def test_values(self, p, alpha, expected):
        assert gelfand_upper_dimension(p, alpha) == pytest.approx(expected, abs=1e-12)

    def test_rejects_p_at_most_one(self):
        with pytest.raises(DomainError):
            gelfand_upper_dimension(1.0, 0.0)


class TestPowerExponents:
    def test_sobolev_consistency(self):
        # q_star(q=3) = 4, where the Sobolev-critical power (n+2)/(n-2) is 3
        pe = power_exponents(ProblemParams(2.0, 0.0, 4.0), 3.0)
        assert pe.q_star == pytest.approx(4.0, abs=1e-14)

    def test_negative_exponent_lower_threshold(self):
        pe = power_exponents(ProblemParams(2.0, 0.0, 5.0), -2.0)
        assert pe.q_sharp == pytest.approx(2.0, abs=1e-14)

    def test_sharp_threshold_is_two_for_all_q_at_p2_alpha0(self):
        for q in (-3.0, -0.5, 2.0, 7.0):
            pe = power_exponents(ProblemParams(2.0, 0.0, 5.0), q)
            assert pe.q_sharp == pytest.approx(2.0, abs=1e-12)

    def test_upper_threshold_value(self):
        pe = power_exponents(ProblemParams(2.0, 0.0, 5.0), 5.0)
        assert pe.q_plus == pytest.approx(7.0 + 2.0 * math.sqrt(5.0), abs=1e-12)

    def test_unweighted_semilinear_reductions(self):
        # at p=2, alpha=0 the thresholds collapse to the classical forms
        # q_star = 2(q+1)/(q-1), q_pm = 2 + 4(q ± sqrt(q(q-1)))/(q-1)
        for q in (2.0, 3.0, 5.0, 9.0):
            pe = power_exponents(ProblemParams(2.0, 0.0, 6.0), q)
            assert pe.q_star == pytest.approx(2.0 * (q + 1.0) / (q - 1.0), rel=1e-14)
            root = math.sqrt(q * (q - 1.0))
            assert pe.q_plus == pytest.approx(2.0 + 4.0 * (q + root) / (q - 1.0),
                                              rel=1e-14)
            assert pe.q_minus == pytest.approx(2.0 + 4.0 * (q - root) / (q - 1.0),
                                               rel=1e-14)

    def test_degenerate_denominator(self):
        with pytest.raises(DomainError, match="q - p \\+ 1"):
            power_exponents(ProblemParams(2.0, 0.0, 5.0), 1.0)

    def test_complex_range_rejected(self):
        # 0 < q < p-1 makes q(q-p+1) negative
        with pytest.raises(DomainError):
            power_exponents(ProblemParams(3.0, 0.0, 5.0), 1.0)

    @given(
        p=st.floats(2.0, 4.0),
        alpha=st.floats(0.0, 3.0),
        dq=st.floats(0.05, 10.0),
    )
    @settings(max_examples=80, derandomize=True)
    def test_plus_minus_ordering_superlinear(self, p, alpha, dq):
        pe = power_exponents(ProblemParams(p, alpha, 5.0), p - 1.0 + dq)
        assert pe.q_minus <= pe.q_plus + 1e-12

    @given(
        p=st.floats(2.0, 4.0),
        alpha=st.floats(0.0, 3.0),
        q=st.floats(-8.0, -0.05),
    )
    @settings(max_examples=80, derandomize=True)
    def test_plus_minus_ordering_flips_for_negative_q(self, q, p, alpha):
        # the shared denominator q-p+1 < 0 reverses the ordering
        pe = power_exponents(ProblemParams(p, alpha, 5.0), q)
        assert pe.q_minus >= pe.q_plus - 1e-12


class TestRegimeClassification:
    def test_gelfand_finite_morse_window(self):
        rep = classify_regime(ProblemParams(2.0, 0.0, 9.0), Nonlinearity.gelfand())
        assert rep.verdict is Verdict.NONEXISTENCE_FINITE_MORSE_RADIAL
        assert rep.window_lower == pytest.approx(2.0)
        assert rep.window_upper == pytest.approx(10.0)

    def test_gelfand_stable_only_below_p(self):
        rep = classify_regime(ProblemParams(2.0, 0.0, 1.5), Nonlinearity.gelfand())
        assert rep.verdict is Verdict.NONEXISTENCE_STABLE
        assert rep.window_upper == pytest.approx(10.0)

    def test_lane_emden_critical_family(self):
        rep = classify_regime(ProblemParams(2.0, 0.0, 4.0), Nonlinearity.lane_emden(3.0))
        assert rep.verdict is Verdict.CRITICAL_EXPLICIT_FAMILY

    def test_gelfand_outside(self):
        rep = classify_regime(ProblemParams(2.0, 0.0, 15.0), Nonlinearity.gelfand())
        assert rep.verdict is Verdict.OUTSIDE_THEOREMS

    def test_negative_exponent_window(self):
        rep = classify_regime(
            ProblemParams(2.0, 0.0, 5.0), Nonlinearity.negative_exponent(-2.0)
        )
        assert rep.verdict is Verdict.NONEXISTENCE_FINITE_MORSE_RADIAL
        assert rep.window_lower == pytest.approx(2.0)
        assert rep.window_upper == pytest.approx(7.9326529903, rel=1e-9)

    def test_window_ordering_whenever_nonexistence(self):
        grid = [
            (ProblemParams(2.0, a, n), nl)
            for a in (0.0, 1.0, 2.5)
            for n in (2.5, 5.0, 9.0, 14.0)
            for nl in (
                Nonlinearity.gelfand(),
                Nonlinearity.lane_emden(5.0),
                Nonlinearity.negative_exponent(-2.0),
            )
        ]
        for params, nl in grid:
            rep = classify_regime(params, nl)
            if rep.verdict in (
                Verdict.NONEXISTENCE_FINITE_MORSE_RADIAL,
                Verdict.NONEXISTENCE_STABLE,
            ):
                assert rep.window_lower < rep.window_upper


class TestExponentReport:
    def test_report_without_q_leaves_power_fields_empty(self):
        rep = exponent_report(ProblemParams(2.0, 0.0, 9.0))
        assert rep.q_star is None and rep.q_plus is None
        assert rep.gelfand_upper == pytest.approx(10.0)

    def test_sign_law_sample(self):
        # the decay exponent is positive strictly inside, negative outside
        for p, alpha in [(2.0, 0.0), (3.0, 1.0), (2.5, 2.0)]:
            upper = gelfand_upper_dimension(p, alpha)
            below = decay_exponent(ProblemParams(p, alpha, upper - 1.0))
            above = decay_exponent(ProblemParams(p, alpha, upper + 1.0))
            assert below > 0.0 > above

    def test_relaxed_p_warns(self):
        with pytest.warns(UserWarning):
            params = ProblemParams(1.5, 0.0, 5.0, relax_p=True)
        assert params.p == 1.5
        with pytest.raises(DomainError):
            ProblemParams(1.5, 0.0, 5.0)
