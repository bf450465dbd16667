import math

import numpy as np
import pytest

from cvbell import (
    CutoffTooSmallError,
    InvalidParameterError,
    PrecisionError,
    TripartitePhotonNumbers,
    displaced_parity_expect,
    e_dp_gaussian,
    f_twb,
    onoff_condition,
    orthant_probabilities,
    pseudospin_expect,
    quadrature_orthant_expect,
    su21_fock,
    su21_ps_coeffs,
    su21_state,
    twb_fock,
)

X_AXIS = (math.pi / 2, 0.0)
Z_AXIS = (0.0, 0.0)


class TestBuilders:
    def test_su21_vacuum(self):
        st = su21_fock(TripartitePhotonNumbers(0.0, 0.0), 8)
        assert st.amps[0, 0, 0] == pytest.approx(1.0)
        assert st.norm_sq() == pytest.approx(1.0)

    def test_su21_single_pair_amplitude(self):
        # n2 = 1, n3 = 0: component |1,1,0> has amplitude sqrt(N2)/(1+N1) = 1/2
        st = su21_fock(TripartitePhotonNumbers(1.0, 0.0), 20)
        assert st.amps[1, 1, 0] == pytest.approx(0.5)
        assert st.amps[0, 0, 0] == pytest.approx(1 / math.sqrt(2.0))

    def test_su21_norm_within_tail_budget(self):
        st = su21_fock(TripartitePhotonNumbers(0.5, 0.5), 25)
        assert st.norm_sq() >= 1.0 - 1e-6

    def test_su21_cutoff_guard(self):
        with pytest.raises(CutoffTooSmallError) as err:
            su21_fock(TripartitePhotonNumbers(2.0, 2.0), 10)
        assert err.value.suggested_cutoff > 10

    def test_twb_vacuum(self):
        st = twb_fock(0.0, 6)
        assert st.amps[0, 0] == pytest.approx(1.0)

    def test_twb_amplitude(self):
        st = twb_fock(0.5, 30)
        assert st.amps[1, 1] == pytest.approx(math.sqrt(0.75) * 0.5)

    def test_twb_tail_guard_and_suggestion(self):
        # X = 0.9 at cutoff 40 leaves 0.9^80 ~ 2e-4 outside, far over the budget
        with pytest.raises(CutoffTooSmallError) as err:
            twb_fock(0.9, 40)
        assert err.value.suggested_cutoff >= 66
        st = twb_fock(0.9, err.value.suggested_cutoff)
        assert st.norm_sq() >= 1.0 - 1e-6


class TestDisplacedParity:
    def test_vacuum_no_displacement(self):
        st = twb_fock(0.0, 10)
        assert displaced_parity_expect(st, [0.0, 0.0]) == pytest.approx(1.0)

    def test_coherent_parity_single_mode(self):
        from cvbell.fock import FockPureState
        amps = np.zeros(30, dtype=complex)
        amps[0] = 1.0
        st = FockPureState(1, 30, amps)
        assert displaced_parity_expect(st, [0.5]) == pytest.approx(
            math.exp(-0.5), abs=1e-10)

    def test_matches_gaussian_path(self, photons_03, su21_fock_03):
        gs = su21_state(photons_03)
        al = (0.1, 0.1j, 0.0)
        assert displaced_parity_expect(su21_fock_03, al) == pytest.approx(
            e_dp_gaussian(gs, al), abs=1e-5)

    def test_amplitude_guard(self, su21_fock_03):
        with pytest.raises(PrecisionError):
            displaced_parity_expect(su21_fock_03, [2.0, 0.0, 0.0])

    def test_cutoff_doubling_stability(self, photons_03):
        al = (0.2, -0.1 + 0.1j, 0.05j)
        a = displaced_parity_expect(su21_fock(photons_03, 16), al)
        b = displaced_parity_expect(su21_fock(photons_03, 32), al)
        assert abs(a - b) < 1e-6


class TestPseudospin:
    def test_vacuum_z(self):
        st = twb_fock(0.0, 10)
        # even number states carry -1 in the ladder definition
        assert pseudospin_expect(st, [Z_AXIS, Z_AXIS]) == pytest.approx(1.0)
        from cvbell.fock import FockPureState
        amps = np.zeros(10, dtype=complex)
        amps[0] = 1.0
        assert pseudospin_expect(FockPureState(1, 10, amps), [Z_AXIS]) == pytest.approx(-1.0)

    def test_twb_spin_flip_value(self):
        st = twb_fock(math.tanh(math.asinh(1.0)), 40)
        assert pseudospin_expect(st, [X_AXIS, X_AXIS]) == pytest.approx(
            f_twb(2.0), abs=1e-9)
        assert f_twb(2.0) == pytest.approx(math.sqrt(8.0) / 3.0)

    def test_series_coefficient_magnitudes(self, su21_fock_03):
        c = su21_ps_coeffs(0.3, 0.3, tol=1e-10)
        o1 = pseudospin_expect(su21_fock_03, [Z_AXIS, X_AXIS, X_AXIS])
        o2 = pseudospin_expect(su21_fock_03, [X_AXIS, Z_AXIS, X_AXIS])
        o3 = pseudospin_expect(su21_fock_03, [X_AXIS, X_AXIS, Z_AXIS])
        assert abs(o1) == pytest.approx(abs(c.c1), abs=1e-5)
        assert abs(o2) == pytest.approx(abs(c.c2), abs=1e-5)
        assert abs(o3) == pytest.approx(abs(c.c3), abs=1e-5)

    def test_all_z_sign_discrepancy_is_surfaced(self, su21_fock_03):
        # ladder definition gives -1 on this state; the closed forms use +1
        zzz = pseudospin_expect(su21_fock_03, [Z_AXIS, Z_AXIS, Z_AXIS])
        assert zzz == pytest.approx(-1.0, abs=1e-9)

    def test_odd_cutoff_rejected(self, photons_03):
        st = su21_fock(photons_03, 21)
        with pytest.raises(InvalidParameterError):
            pseudospin_expect(st, [Z_AXIS, Z_AXIS, Z_AXIS])


class TestOnOffCondition:
    def test_eta_zero_degenerate(self, su21_fock_03):
        prob, rho = onoff_condition(su21_fock_03, 2, 0.0)
        assert prob == 0.0
        assert rho is None

    def test_click_probability_value(self):
        # n3 = 1, eta = 1: eta N3/(1 + eta N3) = 1/2
        st = su21_fock(TripartitePhotonNumbers(0.0, 1.0), 40)
        prob, _ = onoff_condition(st, 2, 1.0)
        assert prob == pytest.approx(0.5, abs=1e-9)

    def test_conditioned_state_has_no_vacuum(self, su21_fock_03):
        _, rho = onoff_condition(su21_fock_03, 2, 1.0)
        assert abs(rho.matrix[0, 0]) < 1e-12

    def test_conditioned_operator_is_physical(self, su21_fock_03):
        prob, rho = onoff_condition(su21_fock_03, 2, 0.8)
        assert np.real(np.trace(rho.matrix)) == pytest.approx(1.0, abs=1e-12)
        assert rho.min_eigenvalue() >= -1e-9


class TestOrthant:
    def test_two_mode_vacuum_uncorrelated(self):
        st = twb_fock(0.0, 12)
        for th, ph in ((0.0, 0.0), (0.7, -0.3), (1.2, 2.0)):
            assert quadrature_orthant_expect(st, th, ph) == pytest.approx(0.0, abs=1e-12)

    def test_twb_arcsine_value(self, twb_fock_n1):
        # n = 1: correlation tanh(2r) with sinh^2 r = 1/2, so E = (2/pi) asin(tanh 2r)
        r = math.asinh(math.sqrt(0.5))
        expected = (2 / math.pi) * math.asin(math.tanh(2 * r))
        assert quadrature_orthant_expect(twb_fock_n1, 0.0, 0.0) == pytest.approx(
            expected, abs=1e-6)

    def test_orthant_probabilities_complete(self, twb_fock_n1):
        ps = orthant_probabilities(twb_fock_n1, 0.4, 0.9)
        assert sum(ps) == pytest.approx(1.0, abs=1e-6)
        assert all(p >= -1e-12 for p in ps)

    def test_expectation_bounded(self, twb_fock_n1):
        for th in np.linspace(0, 2 * math.pi, 7):
            assert abs(quadrature_orthant_expect(twb_fock_n1, th, 0.3)) <= 1.0 + 1e-9
