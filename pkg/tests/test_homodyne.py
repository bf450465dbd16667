import math

import numpy as np
import pytest

from cvbell import (
    ConditionalParams,
    GaussianState,
    HomodyneSetting,
    TripartitePhotonNumbers,
    b2_h,
    classical_reference,
    e_h_conditional,
    e_h_gaussian,
    onoff_condition,
    quadrature_orthant_expect,
    su21_fock,
    twb_state,
)


class TestClassicalReference:
    @pytest.mark.parametrize("psi,expected", [(0.0, 1.0), (math.pi, -1.0),
                                              (-math.pi, -1.0), (math.pi / 2, 0.0)])
    def test_sawtooth_values(self, psi, expected):
        assert classical_reference(psi) == pytest.approx(expected)

    def test_periodic_continuation(self):
        assert classical_reference(2 * math.pi + 0.3) == pytest.approx(
            classical_reference(0.3))


class TestGaussianCorrelator:
    def test_vacuum_uncorrelated(self):
        vac = GaussianState(2, np.eye(4))
        for th, ph in ((0.0, 0.0), (0.7, 1.9), (-0.4, 0.2)):
            assert e_h_gaussian(vac, th, ph) == 0.0

    def test_twb_arcsine_value(self):
        # n = 2: sinh^2 r = 1, correlation sinh2r/cosh2r at aligned phases
        r = math.asinh(1.0)
        expected = (2 / math.pi) * math.asin(math.sinh(2 * r) / math.cosh(2 * r))
        assert e_h_gaussian(twb_state(2.0), 0.0, 0.0) == pytest.approx(expected)

    def test_twb_phase_dependence_is_cosine(self):
        s = twb_state(3.0)
        r = math.asinh(math.sqrt(1.5))
        for th, ph in ((0.4, 0.9), (1.0, -0.3)):
            rho = math.tanh(2 * r) * math.cos(th + ph)
            assert e_h_gaussian(s, th, ph) == pytest.approx(
                (2 / math.pi) * math.asin(rho), abs=1e-12)

    def test_monte_carlo_cross_check(self):
        s = twb_state(2.0)
        rng = np.random.default_rng(17)
        samples = rng.multivariate_normal(np.zeros(4), s.cov / 2.0, size=400000)
        th, ph = 0.3, -0.5
        q1 = samples[:, 0] * math.cos(th) + samples[:, 2] * math.sin(th)
        q2 = samples[:, 1] * math.cos(ph) + samples[:, 3] * math.sin(ph)
        mc = float(np.mean(np.sign(q1) * np.sign(q2)))
        assert e_h_gaussian(s, th, ph) == pytest.approx(mc, abs=5e-3)

    def test_chsh_bounded_for_gaussian(self):
        s = twb_state(5.0)
        rng = np.random.default_rng(23)
        for _ in range(2000):
            t1, t2, p1, p2 = rng.uniform(-math.pi, math.pi, 4)
            assert b2_h(s, t1, t2, p1, p2).value <= 2.0 + 1e-9


class TestHeraldedCorrelator:
    params = ConditionalParams(0.3, 0.3, eta=0.8)

    def test_quarter_turn_vanishes(self):
        for p in (self.params, ConditionalParams(1.0, 0.5, eta=1.0)):
            assert e_h_conditional(p, HomodyneSetting(math.pi / 2, 0.0)) == pytest.approx(
                0.0, abs=1e-14)

    def test_matches_orthant_oracle(self):
        _, rho = onoff_condition(su21_fock(TripartitePhotonNumbers(0.3, 0.3), 26),
                                 2, 0.8)
        for th in (0.0, 0.7, 1.9, -1.1):
            oracle = quadrature_orthant_expect(rho, th, 0.0)
            assert e_h_conditional(self.params, HomodyneSetting(th, 0.0)) == pytest.approx(
                oracle, abs=1e-3)

    def test_combined_angle_only(self):
        a = e_h_conditional(self.params, HomodyneSetting(0.9, 0.4))
        b = e_h_conditional(self.params, HomodyneSetting(0.1, 1.2))
        assert a == pytest.approx(b, abs=1e-14)

    def test_phase_offset_enters_psi(self):
        p = ConditionalParams(0.3, 0.3, phi2=0.5, eta=0.8)
        base = ConditionalParams(0.3, 0.3, eta=0.8)
        assert e_h_conditional(p, HomodyneSetting(0.2, 0.0)) == pytest.approx(
            e_h_conditional(base, HomodyneSetting(0.7, 0.0)), abs=1e-14)

    @pytest.mark.parametrize("n2", [0.5, 1.0, 5.0])
    def test_never_exceeds_the_sawtooth(self, n2):
        p = ConditionalParams(n2=n2, n3=0.5, eta=1.0)
        for psi in np.linspace(-math.pi, math.pi, 200):
            eh = e_h_conditional(p, HomodyneSetting(psi, 0.0))
            cl = classical_reference(psi)
            assert abs(eh) <= abs(cl) + 1e-12
            assert eh * cl >= -1e-12  # same sign region

    def test_bounded(self):
        for psi in np.linspace(-math.pi, math.pi, 50):
            assert abs(e_h_conditional(self.params, HomodyneSetting(psi, 0.0))) <= 1.0


class TestChsh:
    def test_heralded_state_never_violates(self):
        p = ConditionalParams(1.0, 0.5, eta=1.0)
        rng = np.random.default_rng(31)
        mx = 0.0
        for _ in range(10000):
            t1, t2, p1, p2 = rng.uniform(-math.pi, math.pi, 4)
            mx = max(mx, b2_h(p, t1, t2, p1, p2).value)
        assert mx <= 2.0

    def test_vacuum_trivial(self):
        vac = GaussianState(2, np.eye(4))
        assert b2_h(vac, 0.1, 0.5, 0.2, 0.9).value == 0.0
