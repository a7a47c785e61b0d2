import math

import numpy as np
import pytest

from plaplab import (
    DomainError,
    FitError,
    GateError,
    Nonlinearity,
    ProblemParams,
    RangeError,
    SolverConfig,
    caccioppoli_power_audit,
    decay_fit,
    energy,
    gelfand_estimate_audit,
    inverse_gradient_integral_audit,
    pohozaev_audit,
    pointwise_gap_audit,
    solve_ivp,
    strict_weight_comparison,
)
from plaplab.cutoffs import CutoffFamily
from plaplab.estimates import ball_volume, sphere_area, _gap_prefactor
from plaplab.profile import RadialProfile
from plaplab.solver import explicit_gelfand_singular


class TestCutoffs:
    def test_ball_shape_and_gradient_bound(self):
        cut = CutoffFamily.ball(10.0)
        r = np.linspace(0.01, 25.0, 500)
        v = cut.value(r)
        assert np.all((0.0 <= v) & (v <= 1.0))
        assert np.all(v[r <= 10.0] == 1.0)
        assert np.all(v[r >= 20.0] == 0.0)
        assert np.max(np.abs(cut.derivative(r))) <= cut.grad_bound_outer / 10.0 + 1e-12

    def test_annulus_requires_room(self):
        with pytest.raises(DomainError):
            CutoffFamily.annulus(R=7.0, R0=5.0)
        cut = CutoffFamily.annulus(R=20.0, R0=5.0)
        r = np.linspace(0.01, 45.0, 900)
        v = cut.value(r)
        assert np.all(v[r <= 6.0] == 0.0)
        assert np.all(v[(r >= 7.0) & (r <= 20.0)] == 1.0)
        assert np.all(v[r >= 40.0] == 0.0)

    def test_sphere_area_matches_integer_dimensions(self):
        assert sphere_area(2.0) == pytest.approx(2.0 * math.pi)
        assert sphere_area(3.0) == pytest.approx(4.0 * math.pi)
        assert ball_volume(3.0, 2.0) == pytest.approx(4.0 / 3.0 * math.pi * 8.0)


class TestInverseGradientIntegral:
    def test_empty_window_is_trivially_satisfied(self, singular11):
        aud = inverse_gradient_integral_audit(singular11, 3.0, 3.0)
        assert aud.lhs == 0.0 and aud.satisfied

    def test_singular_solution_quantitative(self, singular11):
        # hand evaluation: lhs = (1 - (s/S)^7) / (28 s^7), C = 7/40
        aud = inverse_gradient_integral_audit(singular11, 2.0, 50.0)
        expected_lhs = (1.0 - (2.0 / 50.0) ** 7) / (28.0 * 2.0**7)
        assert aud.lhs == pytest.approx(expected_lhs, rel=1e-6)
        assert aud.constant_used == pytest.approx(7.0 / 40.0, rel=1e-6)
        assert aud.satisfied

    def test_shrunken_constant_fails(self, singular11):
        aud = inverse_gradient_integral_audit(singular11, 2.0, 50.0)
        assert aud.lhs > aud.rhs / 1e6  # the bound with C/1e6 would be violated

    def test_window_validation(self, singular11):
        with pytest.raises(RangeError):
            inverse_gradient_integral_audit(singular11, 0.5, 10.0)

    def test_requires_zero_weight_variables(self):
        src = ProblemParams(2.0, 2.0, 5.0)
        prof = solve_ivp(src, Nonlinearity.gelfand(), 0.0, SolverConfig(r_max=10.0))
        with pytest.raises(DomainError):
            inverse_gradient_integral_audit(prof, 1.0, 5.0)


class TestPointwiseGap:
    def test_both_sides_vanish_as_gamma_approaches_one(self, singular11):
        aud = pointwise_gap_audit(singular11, 1.0 + 1e-9, 4.0)
        assert aud.lhs < 1e-6 and aud.rhs < 1e-6

    def test_singular_solution_quantitative(self, singular11):
        # gap = 2 ln 2; prefactor (3/7)(1 - 2^{-7/3}); C = 7/40
        aud = pointwise_gap_audit(singular11, 2.0, 4.0)
        assert aud.rhs == pytest.approx(2.0 * math.log(2.0), rel=1e-10)
        c_gamma = (3.0 / 7.0) * (1.0 - 2.0 ** (-7.0 / 3.0))
        expected_bound = c_gamma**1.5 / math.sqrt(7.0 / 40.0) * 4.0 ** (
            0.5 * (4.0 - 11.0 + 2.0 * math.sqrt(10.0))
        )
        assert aud.lhs == pytest.approx(expected_bound, rel=1e-6)
        assert aud.satisfied

    def test_log_branch_prefactor(self):
        # the de-weighted dimension p+2 triggers the logarithmic branch
        assert _gap_prefactor(ProblemParams(2.0, 0.0, 4.0), 3.0) == pytest.approx(
            math.log(3.0)
        )
        # weighted case: n = (p+2)(p+alpha)/p - alpha puts the de-weighted
        # dimension at p+2
        assert _gap_prefactor(ProblemParams(2.0, 2.0, 6.0), 3.0) == pytest.approx(
            2.0 * math.log(3.0)
        )

    def test_range_validation(self, singular11):
        with pytest.raises(RangeError):
            pointwise_gap_audit(singular11, 0.9, 4.0)
        with pytest.raises(RangeError):
            pointwise_gap_audit(singular11, 2.0, 0.5)

    def test_weighted_profile_goes_through_the_transform(self):
        # constant C comes from the de-weighted profile; the audit must
        # accept weighted inputs and produce finite sides
        src = ProblemParams(2.0, 2.0, 6.0)
        prof = solve_ivp(src, Nonlinearity.gelfand(), 0.0, SolverConfig(r_max=40.0))
        aud = pointwise_gap_audit(prof, 2.0, 3.0)
        assert math.isfinite(aud.lhs) and math.isfinite(aud.rhs)
        assert aud.rhs == pytest.approx(
            float(abs(prof.u_at(6.0) - prof.u_at(3.0))), rel=1e-12
        )


class TestDecayFit:
    def test_explicit_tail_slope(self, u_eps):
        slope, lower = decay_fit(u_eps, (200.0, 500.0), u_inf=0.0)
        assert slope == pytest.approx(-2.0, abs=0.01)

    def test_stable_shot_beats_lower_bound(self, lane_emden12_shot):
        slope, lower = decay_fit(lane_emden12_shot, (40.0, 160.0))
        assert slope == pytest.approx(-0.5, abs=0.05)
        assert slope >= lower - 0.05

    def test_constant_profile_has_no_fit(self):
        nl = Nonlinearity.custom(lambda u: u - 1.0, lambda u: 1.0)
        prof = solve_ivp(ProblemParams(2.0, 0.0, 5.0), nl, 1.0,
                         SolverConfig(r_max=100.0))
        with pytest.raises(FitError):
            decay_fit(prof, (1.0, 40.0))

    def test_window_must_leave_an_octave(self, lane_emden12_shot):
        with pytest.raises(RangeError):
            decay_fit(lane_emden12_shot, (40.0, 350.0))

    def test_log_branch_at_window_edge_dimension(self):
        # at n = 4(p+alpha)/(p-1)+p the growth is logarithmic: fit the
        # coefficient of ln r instead (singular solution grows like 2 ln r)
        prof = explicit_gelfand_singular(
            ProblemParams(2.0, 0.0, 10.0), np.geomspace(0.1, 4000.0, 600)
        )
        coef, lower = decay_fit(prof, (50.0, 2000.0))
        assert lower == 0.0
        assert coef == pytest.approx(2.0, abs=1e-6)


class TestPohozaev:
    def test_explicit_critical_identity(self, u_eps):
        aud = pohozaev_audit(u_eps, 3.0, 20.0)
        assert aud.lhs <= 1e-5
        assert aud.satisfied
        assert aud.details["balance_coefficient"] == 0.0

    def test_limit_identity_as_truncation_grows(self, u_eps):
        near = pohozaev_audit(u_eps, 3.0, 20.0).details["gradient_potential_ratio"]
        far = pohozaev_audit(u_eps, 3.0, 500.0).details["gradient_potential_ratio"]
        assert abs(far - 1.0) < abs(near - 1.0)
        assert far == pytest.approx(1.0, abs=1e-4)

    def test_identity_closes_on_numeric_data(self, critical_shot):
        # same identity on solver output instead of the closed form: the
        # defect is limited by the shot's weak residual, not the quadrature
        aud = pohozaev_audit(critical_shot, 3.0, 10.0)
        assert aud.satisfied
        assert aud.lhs < 1e-6
        assert aud.details["weak_residual"] < 1e-4

    def test_non_solution_hits_the_gate(self):
        r = np.geomspace(0.01, 50.0, 200)
        params = ProblemParams(2.0, 0.0, 4.0)
        prof = RadialProfile(
            r=r, u=np.full_like(r, 2.0), ur=np.zeros_like(r),
            flux=np.zeros_like(r), params=params,
        )
        with pytest.raises(GateError):
            pohozaev_audit(prof, 3.0, 20.0)


class TestEnergy:
    def test_constant_equilibrium_value(self):
        nl = Nonlinearity.custom(lambda u: u - 1.0, lambda u: 1.0)
        prof = solve_ivp(ProblemParams(2.0, 0.0, 5.0), nl, 1.0,
                         SolverConfig(r_max=10.0, r_start=1e-7))
        # F-antiderivative at 1 is -1/2, so the energy is |B_R| / 2
        val = energy(prof, nl, 2.0)
        assert val == pytest.approx(ball_volume(5.0, 2.0) / 2.0, rel=1e-6)

    def test_shell_additivity(self, u_eps):
        nl = Nonlinearity.lane_emden(3.0)
        e1 = energy(u_eps, nl, 10.0)
        e2 = energy(u_eps, nl, 40.0)
        # independent quadrature of the shell contribution
        from plaplab.estimates import _log_integral

        p, alpha, n = 2.0, 0.0, 4.0
        shell = sphere_area(n) * _log_integral(
            lambda r: r ** (n - 1.0)
            * (np.abs(u_eps.ur_at(r)) ** p / p - u_eps.u_at(r) ** 4 / 4.0),
            10.0, 40.0,
        )
        assert e2 - e1 == pytest.approx(shell, rel=1e-8)

    def test_critical_energy_converges(self, u_eps):
        nl = Nonlinearity.lane_emden(3.0)
        e_small = energy(u_eps, nl, 100.0)
        e_large = energy(u_eps, nl, 1000.0)
        assert abs(e_large - e_small) < 1e-3 * max(1.0, abs(e_small))


class TestCutoffEstimates:
    def test_power_slope_alpha_zero(self):
        shot = solve_ivp(ProblemParams(2.0, 0.0, 12.0), Nonlinearity.lane_emden(5.0),
                         1.0, SolverConfig(r_max=170.0))
        aud = caccioppoli_power_audit(
            shot, 5.0, 1.0, CutoffFamily.ball(20.0, m=2), "grad-p",
            calibration_R=10.0, sweep=(10.0, 20.0, 40.0, 80.0),
        )
        assert aud.slope_fit == pytest.approx(9.0, abs=0.02)
        assert aud.satisfied

    def test_power_slope_with_weight(self):
        shot = solve_ivp(ProblemParams(2.0, 1.0, 12.0), Nonlinearity.lane_emden(5.0),
                         1.0, SolverConfig(r_max=170.0))
        aud = caccioppoli_power_audit(
            shot, 5.0, 1.0, CutoffFamily.ball(20.0, m=2), "grad-p",
            calibration_R=10.0, sweep=(10.0, 20.0, 40.0, 80.0),
        )
        assert aud.slope_fit == pytest.approx(8.5, abs=0.02)

    def test_grad2_variant_matches_gradp_at_p2(self):
        shot = solve_ivp(ProblemParams(2.0, 0.0, 12.0), Nonlinearity.lane_emden(5.0),
                         1.0, SolverConfig(r_max=170.0))
        aud = caccioppoli_power_audit(
            shot, 5.0, 1.0, CutoffFamily.ball(20.0, m=2), "grad-2",
            calibration_R=10.0, sweep=(10.0, 20.0, 40.0, 80.0),
        )
        # at p=2 the |Du|^{p-2} factor is 1, so the predicted slope coincides
        assert aud.details["predicted_slope"] == pytest.approx(
            12.0 - 2.0 * 6.0 / 4.0
        )
        assert aud.slope_fit == pytest.approx(aud.details["predicted_slope"], abs=0.02)

    def test_t_window_edges(self, lane_emden12_shot):
        cut = CutoffFamily.ball(20.0, m=2)
        upper = -1.0 + 2.0 * (5.0 + math.sqrt(5.0 * 4.0)) / 1.0
        with pytest.raises(RangeError):
            caccioppoli_power_audit(lane_emden12_shot, 5.0, upper, cut)
        with pytest.raises(RangeError):
            caccioppoli_power_audit(lane_emden12_shot, 5.0, 0.5, cut)

    def test_negative_exponent_branch(self):
        prof = solve_ivp(ProblemParams(2.0, 0.0, 5.0),
                         Nonlinearity.negative_exponent(-2.0), 1.0,
                         SolverConfig(r_max=90.0))
        # t = -1 makes one printed Hölder exponent degenerate; the audit
        # must flag it but still evaluate the formula as printed
        with pytest.warns(UserWarning, match="Hölder"):
            aud = caccioppoli_power_audit(
                prof, -2.0, -1.0, CutoffFamily.ball(10.0, m=2), "grad-p",
                calibration_R=5.0, sweep=(5.0, 10.0, 20.0, 40.0),
            )
        # n - p(t+q)/(q-p+1) = 5 - 2(-3)/(-3) = 3
        assert aud.details["predicted_slope"] == pytest.approx(3.0)
        assert aud.slope_fit == pytest.approx(3.0, abs=0.02)

    def test_exponential_slopes(self, singular11):
        for t, want in ((0.2, 11.0 - 2.0 * 1.4), (0.5, 11.0 - 4.0)):
            aud = gelfand_estimate_audit(
                singular11, t, CutoffFamily.ball(20.0, m=math.ceil(2 * t + 1)),
                "grad-p", calibration_R=10.0, sweep=(10.0, 20.0, 40.0, 80.0),
            )
            assert aud.slope_fit == pytest.approx(want, abs=0.02)
            assert aud.satisfied

    def test_exponential_t_range(self, singular11):
        cut = CutoffFamily.ball(20.0, m=2)
        with pytest.raises(RangeError):
            gelfand_estimate_audit(singular11, 2.0, cut)
        with pytest.raises(RangeError):
            gelfand_estimate_audit(singular11, 0.0, cut)

    def test_annulus_cutoff_runs(self, singular11):
        cut = CutoffFamily.annulus(R=30.0, R0=2.0, m=2)
        aud = gelfand_estimate_audit(singular11, 0.4, cut, "grad-p")
        assert aud.rhs > 0.0 and aud.lhs > 0.0


class TestScaleConsistency:
    def test_audits_stable_under_profile_refinement(self):
        # doubling the sampling of the same closed-form profile moves audit
        # values by far less than 0.5%
        coarse = explicit_gelfand_singular(
            ProblemParams(2.0, 0.0, 11.0), np.geomspace(5e-3, 220.0, 400)
        )
        fine = explicit_gelfand_singular(
            ProblemParams(2.0, 0.0, 11.0), np.geomspace(5e-3, 220.0, 800)
        )
        for prof_pair in [(coarse, fine)]:
            a, b = (inverse_gradient_integral_audit(p, 2.0, 50.0) for p in prof_pair)
            assert a.lhs == pytest.approx(b.lhs, rel=5e-3)
            assert a.rhs == pytest.approx(b.rhs, rel=5e-3)
            g, h = (pointwise_gap_audit(p, 2.0, 4.0) for p in prof_pair)
            assert g.lhs == pytest.approx(h.lhs, rel=5e-3)
            assert g.rhs == pytest.approx(h.rhs, rel=5e-3)
            cut = CutoffFamily.ball(20.0, m=2)
            e1, e2 = (gelfand_estimate_audit(p, 0.4, cut) for p in prof_pair)
            assert e1.lhs == pytest.approx(e2.lhs, rel=5e-3)
            assert e1.rhs == pytest.approx(e2.rhs, rel=5e-3)


class TestStrictWeightComparison:
    def test_unweighted_sides_coincide(self, lane_emden12_shot):
        nl = Nonlinearity.lane_emden(5.0)
        cut = CutoffFamily.ball(20.0, m=2)
        aud = strict_weight_comparison(
            lane_emden12_shot.params, nl, lane_emden12_shot, 1.0, cut, 1.0
        )
        assert aud.lhs == pytest.approx(aud.rhs, rel=1e-12)
        assert aud.satisfied

    def test_weighted_annulus_domination(self):
        params = ProblemParams(2.0, 1.0, 12.0)
        nl = Nonlinearity.lane_emden(5.0)
        shot = solve_ivp(params, nl, 1.0, SolverConfig(r_max=90.0))
        cut = CutoffFamily.annulus(R=30.0, R0=1.0, m=2)
        aud = strict_weight_comparison(params, nl, shot, 1.0, cut, 1.0)
        assert aud.satisfied
        assert aud.lhs <= aud.rhs

    def test_weight_below_floor_is_rejected(self):
        params = ProblemParams(2.0, 1.0, 12.0)
        nl = Nonlinearity.lane_emden(5.0)
        shot = solve_ivp(params, nl, 1.0, SolverConfig(r_max=90.0))
        cut = CutoffFamily.ball(20.0, m=2)  # support reaches r -> 0 where f < M
        with pytest.raises(RangeError):
            strict_weight_comparison(params, nl, shot, 1.0, cut, 1.0)
