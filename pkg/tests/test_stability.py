import numpy as np
import pytest

from plaplab import (
    DomainError,
    Nonlinearity,
    ProblemParams,
    SingularAssembly,
    SolverConfig,
    SupportError,
    hardy_stability_check,
    morse_index_estimate,
    radial_stability_inequality_audit,
    second_variation,
    solve_ivp,
)
from plaplab.stability import assemble_pencil, lowest_eigenpairs, p1_quadratic_form
from plaplab.testfunctions import TestFunction, log_bump, power_log_plateau


class TestSecondVariation:
    def test_nonincreasing_nonlinearity_is_stable(self, lane_emden12_shot):
        nl = Nonlinearity.custom(lambda u: -u, lambda u: -1.0)
        for phi in (log_bump(1.0, 1.0), log_bump(10.0, 1.5), log_bump(50.0, 1.0)):
            assert second_variation(lane_emden12_shot, nl, phi) >= 0.0

    def test_hardy_optimal_direction_detects_instability(self, singular9):
        # 2(n-2) = 14 beats the Hardy constant (n-2)^2/4 = 12.25 in n = 9
        phi = power_log_plateau(-(9.0 - 2.0) / 2.0, 0.01, 500.0)
        assert second_variation(singular9, Nonlinearity.gelfand(), phi) < 0.0

    def test_stable_dimension_resists_the_same_direction(self, singular11):
        # 2(n-2) = 18 <= (n-2)^2/4 = 20.25 in n = 11
        phi = power_log_plateau(-(11.0 - 2.0) / 2.0, 0.01, 200.0)
        assert second_variation(singular11, Nonlinearity.gelfand(), phi) >= 0.0

    def test_quadratic_scaling(self, singular9):
        phi = power_log_plateau(-3.5, 0.1, 100.0)
        q1 = second_variation(singular9, Nonlinearity.gelfand(), phi)
        phi3 = TestFunction(
            fn=lambda r: 3.0 * phi.fn(r), dfn=lambda r: 3.0 * phi.dfn(r),
            support=phi.support,
        )
        q9 = second_variation(singular9, Nonlinearity.gelfand(), phi3)
        assert q9 == pytest.approx(9.0 * q1, rel=1e-12)

    def test_support_outside_profile_rejected(self, singular9):
        phi = log_bump(2000.0, 0.5)
        with pytest.raises(SupportError):
            second_variation(singular9, Nonlinearity.gelfand(), phi)


class TestMorseIndex:
    def test_unstable_window_counts(self, singular11):
        nl = Nonlinearity.gelfand()
        shot5 = solve_ivp(ProblemParams(2.0, 0.0, 5.0), nl, 0.0,
                          SolverConfig(r_max=220.0))
        rep = morse_index_estimate(shot5, nl, (0.01, 200.0), 2000)
        assert rep.negative_count >= 1
        rep11 = morse_index_estimate(singular11, nl, (0.01, 200.0), 2000)
        assert rep11.negative_count == 0
        assert rep11.min_rayleigh > 0.0

    def test_nonincreasing_nonlinearity_counts_zero(self, lane_emden12_shot):
        nl = Nonlinearity.custom(lambda u: -u, lambda u: -1.0)
        rep = morse_index_estimate(lane_emden12_shot, nl, (0.1, 100.0), 500)
        assert rep.negative_count == 0

    def test_domain_monotonicity(self):
        nl = Nonlinearity.gelfand()
        shot = solve_ivp(ProblemParams(2.0, 0.0, 4.0), nl, 0.0,
                         SolverConfig(r_max=220.0))
        inner = morse_index_estimate(shot, nl, (1.0, 50.0), 1200)
        outer = morse_index_estimate(shot, nl, (0.5, 150.0), 1800)
        assert inner.negative_count <= outer.negative_count

    def test_rayleigh_consistency_of_eigenpairs(self):
        nl = Nonlinearity.gelfand()
        shot = solve_ivp(ProblemParams(2.0, 0.0, 6.0), nl, 0.0,
                         SolverConfig(r_max=120.0))
        pencil = assemble_pencil(shot, nl, (0.05, 100.0), 800)
        vals, vecs = lowest_eigenpairs(pencil, 3)
        for j, lam in enumerate(vals):
            q, m = p1_quadratic_form(shot, nl, pencil.nodes, vecs[:, j])
            assert q == pytest.approx(lam * m, rel=1e-6, abs=1e-9 * abs(m))

    def test_eigenvalue_grid_convergence(self):
        nl = Nonlinearity.gelfand()
        shot = solve_ivp(ProblemParams(2.0, 0.0, 5.0), nl, 0.0,
                         SolverConfig(r_max=220.0))
        coarse = morse_index_estimate(shot, nl, (0.01, 200.0), 2000)
        fine = morse_index_estimate(shot, nl, (0.01, 200.0), 4000)
        assert fine.min_rayleigh == pytest.approx(coarse.min_rayleigh, rel=0.01)

    def test_p3_window_instability_with_regularization(self):
        # p=3 sits in its window (3 < 5 < 9); the degenerate-weight floor is
        # active and recorded
        nl = Nonlinearity.gelfand()
        prof = solve_ivp(ProblemParams(3.0, 0.0, 5.0), nl, 0.0,
                         SolverConfig(r_max=120.0))
        rep = morse_index_estimate(prof, nl, (0.05, 100.0), 2000)
        assert rep.negative_count >= 1
        assert rep.regularization == 1e-14

    def test_degenerate_weight_raises(self):
        nl = Nonlinearity.custom(lambda u: u - 1.0, lambda u: 1.0)
        prof = solve_ivp(ProblemParams(3.0, 0.0, 5.0), nl, 1.0,
                         SolverConfig(r_max=10.0))
        with pytest.raises(SingularAssembly):
            morse_index_estimate(prof, nl, (0.1, 5.0), 100)

    def test_grid_size_floor(self, singular11):
        with pytest.raises(DomainError):
            morse_index_estimate(singular11, Nonlinearity.gelfand(), (1.0, 10.0), 8)


class TestHardyCertificate:
    def test_passes_away_from_concentration(self):
        params = ProblemParams(2.0, 0.0, 4.0)
        assert hardy_stability_check(params, 3.0, 1.0, 5.0)

    def test_fails_inside_concentration_region(self):
        params = ProblemParams(2.0, 0.0, 4.0)
        assert not hardy_stability_check(params, 3.0, 1.0, 0.5)

    def test_rejects_off_critical(self):
        with pytest.raises(DomainError):
            hardy_stability_check(ProblemParams(2.0, 0.0, 5.0), 3.0, 1.0, 5.0)

    def test_explicit_delta_must_separate_both_sides(self):
        params = ProblemParams(2.0, 0.0, 4.0)
        assert hardy_stability_check(params, 3.0, 1.0, 10.0, delta=0.5)
        assert not hardy_stability_check(params, 3.0, 1.0, 10.0, delta=2.0)

    def test_general_p_certificate(self):
        # p=3, n=6, q=5 critical; theta = (6+3)/2 = 4.5 < n
        assert hardy_stability_check(ProblemParams(3.0, 0.0, 6.0), 5.0, 1.0, 20.0)


class TestRadialStabilityInequality:
    def test_stable_profile_satisfies(self, singular11):
        eta = power_log_plateau(0.0, 1.0, 10.0)
        lhs, rhs = radial_stability_inequality_audit(singular11, eta)
        assert lhs <= rhs

    def test_zero_direction_gives_zero_pair(self, singular11):
        eta = TestFunction(
            fn=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
            dfn=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
            support=(1.0, 10.0),
        )
        assert radial_stability_inequality_audit(singular11, eta) == (0.0, 0.0)

    def test_unstable_shot_has_witness(self):
        shot9 = solve_ivp(ProblemParams(2.0, 0.0, 9.0), Nonlinearity.gelfand(), 0.0,
                          SolverConfig(r_max=220.0))
        eta = power_log_plateau(-(9.0 - 4.0) / 2.0, 1.0, 150.0)
        lhs, rhs = radial_stability_inequality_audit(shot9, eta)
        assert lhs > rhs

    def test_requires_transformed_variables(self):
        src = ProblemParams(2.0, 2.0, 5.0)
        prof = solve_ivp(src, Nonlinearity.gelfand(), 0.0, SolverConfig(r_max=10.0))
        with pytest.raises(DomainError):
            radial_stability_inequality_audit(prof, power_log_plateau(0.0, 1.0, 5.0))
