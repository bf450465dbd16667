import math

import numpy as np
import pytest

from cvbell import (
    ConditionalParams,
    DpSettings,
    InvalidParameterError,
    b2_conditional_dp,
    b2_dp,
    b2_twb_bw_dp,
    b2_twb_dp,
    b3_dp_general,
    b3_ghz_closed,
    b3_ghz_dp,
    b3_su21_closed,
    b3_su21_opt_dp,
    b3_su21_sym_dp,
    displaced_parity_expect,
    e_dp_conditional,
    e_dp_gaussian,
    e_dp_ghz_closed,
    ghz_dp_settings,
    ghz_state,
    large_squeezing_residual,
    log_j_maximize,
    onoff_condition,
    su21_fock,
    su21_state,
    twb_state,
    TripartitePhotonNumbers,
)

SQRT2 = math.sqrt(2.0)


class TestCorrelators:
    def test_zero_displacement_pure_states(self):
        for s in (ghz_state(1.0), twb_state(2.0),
                  su21_state(TripartitePhotonNumbers(0.5, 0.7))):
            assert e_dp_gaussian(s, [0.0] * s.n_modes) == pytest.approx(1.0, abs=1e-9)

    def test_ghz_explicit_form_matches_covariance_path(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            r = rng.uniform(0.0, 3.0)
            al = rng.normal(0, 0.5, 3) + 1j * rng.normal(0, 0.5, 3)
            assert e_dp_gaussian(ghz_state(r), al) == pytest.approx(
                e_dp_ghz_closed(r, al), abs=1e-10)

    def test_matches_fock_oracle(self, photons_03, su21_fock_03):
        gs = su21_state(photons_03)
        for al in [(0.1, 0.1j, 0.0), (0.2, -0.1 + 0.05j, 0.1j)]:
            assert e_dp_gaussian(gs, al) == pytest.approx(
                displaced_parity_expect(su21_fock_03, al), abs=1e-5)

    def test_conditional_correlator_matches_oracle(self, photons_03, su21_fock_03):
        p = ConditionalParams(0.3, 0.3, eta=0.8)
        _, rho = onoff_condition(su21_fock_03, 2, 0.8)
        for al in [(0.0, 0.0), (0.2, -0.1 + 0.2j)]:
            assert e_dp_conditional(p, al) == pytest.approx(
                displaced_parity_expect(rho, al), abs=1e-5)


class TestGhzClosedForm:
    def test_zero_displacement_is_two(self):
        assert b3_ghz_closed(1.3, 0.0).value == 2.0

    def test_large_squeezing_approaches_three(self):
        res = log_j_maximize(lambda j: b3_ghz_closed(5.0, j).value, 1e-8, 1.0)
        assert res.max_value >= 2.99

    def test_matches_four_correlator_assembly(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            r = rng.uniform(0.0, 3.0)
            j = rng.uniform(0.0, 0.5)
            assert b3_ghz_closed(r, j).value == pytest.approx(
                b3_ghz_dp(r, j).value, abs=1e-10)

    @pytest.mark.parametrize("j", [1e-3, 1e-2, 0.1])
    def test_monotone_in_squeezing(self, j):
        rs = np.linspace(1.0, 4.0, 13)
        vals = [b3_ghz_closed(r, j).value for r in rs]
        assert np.all(np.diff(vals) > 0)


class TestSu21ClosedForm:
    def test_zero_displacement_is_two(self):
        assert b3_su21_closed(7.0, 0.0).value == 2.0

    def test_matches_assembly(self):
        rng = np.random.default_rng(4)
        for _ in range(40):
            n = rng.uniform(0.1, 20.0)
            j = rng.uniform(0.0, 0.3)
            assert b3_su21_closed(n, j).value == pytest.approx(
                b3_su21_sym_dp(n, j).value, abs=1e-10)

    def test_optimum_at_large_energy(self):
        res = log_j_maximize(lambda j: b3_su21_closed(1e4, j).value, 1e-9, 1e-2)
        assert res.max_value == pytest.approx(2.89, abs=0.01)
        # the scaled optimum J*N approaches ~0.165
        assert res.arg_max[0] * 1e4 == pytest.approx(0.165, abs=0.005)

    def test_scaled_reduction_optimum(self):
        """Independent route: optimize the explicit large-N reduction in u = J*N."""
        a = 1.5 - SQRT2
        b = 2 * (3 - 2 * SQRT2)
        c = 4 * (3 + 2 * SQRT2)
        us = np.linspace(0.01, 1.0, 100000)
        vals = 2 * np.exp(-a * us) + np.exp(-b * us) - np.exp(-c * us)
        i = int(np.argmax(vals))
        assert us[i] == pytest.approx(0.165, abs=0.002)
        assert vals[i] == pytest.approx(2.8955, abs=5e-4)


class TestOptimizedFamily:
    def test_asymptotic_value_and_scaling(self):
        res = log_j_maximize(lambda j: b3_su21_opt_dp(1e5, j).value, 1e-8, 1e-1)
        assert res.max_value == pytest.approx(2.99, abs=0.01)
        assert res.arg_max[0] * 1e5 == pytest.approx(3.21, rel=0.15)


class TestGeneralAssembly:
    def test_zero_settings_give_two(self):
        s = su21_state(TripartitePhotonNumbers(0.4, 0.9))
        settings = DpSettings((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
        assert b3_dp_general(s, settings).value == pytest.approx(2.0)

    def test_bounded_over_random_sweeps(self):
        rng = np.random.default_rng(8)
        s3 = ghz_state(1.5)
        s2 = twb_state(3.0)
        for _ in range(300):
            a = rng.normal(0, 0.6, 3) + 1j * rng.normal(0, 0.6, 3)
            ap = rng.normal(0, 0.6, 3) + 1j * rng.normal(0, 0.6, 3)
            assert b3_dp_general(s3, DpSettings(tuple(a), tuple(ap))).value <= 4 + 1e-9
            assert b2_dp(s2, DpSettings(tuple(a[:2]), tuple(ap[:2]))).value <= 2 * SQRT2 + 1e-9

    def test_mode_count_mismatch(self):
        with pytest.raises(InvalidParameterError):
            b3_dp_general(twb_state(1.0), DpSettings((0, 0, 0), (0, 0, 0)))


class TestResidual:
    def test_imaginary_family_solves_the_system(self):
        for j in (0.01, 0.3, 2.0):
            w = 1j * math.sqrt(j)
            settings = DpSettings((w, w, w), (-2 * w, -2 * w, -2 * w))
            assert large_squeezing_residual(settings) == pytest.approx(0.0, abs=1e-14)

    def test_package_family_rotated_in(self):
        settings = ghz_dp_settings(0.2)
        rotated = DpSettings(tuple(1j * a for a in settings.unprimed),
                             tuple(1j * a for a in settings.primed))
        assert large_squeezing_residual(rotated) == pytest.approx(0.0, abs=1e-14)

    def test_zero_settings(self):
        assert large_squeezing_residual(DpSettings((0, 0, 0), (0, 0, 0))) == 0.0

    def test_real_offsets_leave_positive_residual(self):
        settings = DpSettings((0.3, 0.1, -0.2), (0.05, 0.4, 0.2))
        assert large_squeezing_residual(settings) > 0.0


class TestTwbFamilies:
    def test_improved_asymptote_and_scaling(self):
        r = 5.0
        n = 2 * math.sinh(r) ** 2
        res = log_j_maximize(lambda j: b2_twb_dp(n, j).value, 1e-10, 1e-1)
        assert res.max_value == pytest.approx(2.32, abs=0.01)
        assert math.exp(2 * r) * res.arg_max[0] == pytest.approx(
            math.log(3.0) / 32.0, rel=0.10)

    def test_bw_asymptote(self):
        n = 2 * math.sinh(5.0) ** 2
        res = log_j_maximize(lambda j: b2_twb_bw_dp(n, j).value, 1e-10, 1e-1)
        assert res.max_value == pytest.approx(2.19, abs=0.01)


class TestConditionalFamily:
    def test_asymptote_and_scaling(self):
        n2 = 1e3
        p = ConditionalParams(n2=n2, n3=1e-2 / n2, eta=1.0)
        res = log_j_maximize(lambda j: b2_conditional_dp(p, j).value, 1e-9, 1e-2)
        assert res.max_value == pytest.approx(2.41, abs=0.01)
        assert res.arg_max[0] * n2 == pytest.approx(0.042, rel=0.15)
