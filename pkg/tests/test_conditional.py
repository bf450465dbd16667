import math

import numpy as np
import pytest

from cvbell import (
    ConditionalParams,
    TripartitePhotonNumbers,
    UndefinedStateError,
    onoff_condition,
    p_click,
    reduce_state,
    su21_fock,
    su21_state,
    w1_eval,
    w_traced,
    wigner_eval,
    wigner_reconstruct,
)
from cvbell.conditional import two_gaussian_form


class TestClickProbability:
    def test_eta_zero(self):
        assert p_click(ConditionalParams(1.0, 1.0, eta=0.0)) == 0.0

    def test_unit_efficiency_single_photon(self):
        assert p_click(ConditionalParams(0.0, 1.0, eta=1.0)) == pytest.approx(0.5)

    @pytest.mark.parametrize("n3", [0.1, 0.3, 0.5])
    @pytest.mark.parametrize("eta", [0.25, 0.6, 1.0])
    def test_matches_oracle(self, n3, eta):
        st = su21_fock(TripartitePhotonNumbers(0.3, n3), 32)
        prob, _ = onoff_condition(st, 2, eta)
        assert prob == pytest.approx(p_click(ConditionalParams(0.3, n3, eta=eta)),
                                     abs=1e-9)


class TestHeraldedWigner:
    params = ConditionalParams(0.3, 0.3, eta=0.8)

    def test_eta_zero_undefined(self):
        with pytest.raises(UndefinedStateError):
            w1_eval(ConditionalParams(0.3, 0.3, eta=0.0), np.zeros(4))

    def test_matches_oracle_reconstruction(self):
        _, rho = onoff_condition(su21_fock(TripartitePhotonNumbers(0.3, 0.3), 30),
                                 2, 0.8)
        for pt in ([0.0, 0.0, 0.0, 0.0], [0.3, -0.2, 0.1, 0.4], [0.8, 0.1, -0.5, 0.2]):
            assert w1_eval(self.params, pt) == pytest.approx(
                wigner_reconstruct(rho, np.asarray(pt)), abs=1e-4)

    def test_normalization_by_quadrature(self):
        from numpy.polynomial.legendre import leggauss
        xg, wg = leggauss(28)
        xs, ws = xg * 6.0, wg * 6.0
        g2 = np.stack(np.meshgrid(xs, xs, indexing="ij"), axis=-1).reshape(-1, 2)
        w2 = np.outer(ws, ws).ravel()
        total = 0.0
        for (x1, x2), w in zip(g2, w2):
            pts = np.concatenate(
                [np.broadcast_to([x1, x2], (g2.shape[0], 2)), g2], axis=1)
            total += w * float(np.dot(w1_eval(self.params, pts), w2))
        assert total == pytest.approx(1.0, abs=1e-3)

    def test_negative_minimum(self):
        p = ConditionalParams(1.0, 0.5, eta=1.0)
        xs = np.linspace(-1.5, 1.5, 31)
        grid = np.stack(np.meshgrid(xs, xs, [0.0], [0.0], indexing="ij"),
                        axis=-1).reshape(-1, 4)
        assert float(np.min(w1_eval(p, grid))) < 0.0

    def test_first_gaussian_term_positive(self):
        form = two_gaussian_form(self.params)
        rng = np.random.default_rng(5)
        pts = rng.normal(0, 1.5, size=(100, 4))
        qa = np.einsum("...i,ij,...j->...", pts, form.quad_form_a, pts)
        assert np.all(form.weight_a * np.exp(-qa) > 0)

    def test_restrict_invert_asymmetry(self):
        """The two quadratic forms genuinely differ: one is the inverse of the
        restriction, the other the restriction of the inverse."""
        form = two_gaussian_form(self.params)
        V = su21_state(TripartitePhotonNumbers(0.3, 0.3)).cov
        keep = [0, 1, 3, 4]
        np.testing.assert_allclose(
            form.quad_form_a, np.linalg.inv(V[np.ix_(keep, keep)]), atol=1e-12)
        broaden = (2 - 0.8) / 0.8
        D = V + np.diag([0, 0, broaden, 0, 0, broaden])
        np.testing.assert_allclose(
            form.quad_form_b, np.linalg.inv(D)[np.ix_(keep, keep)], atol=1e-12)
        assert not np.allclose(form.quad_form_a, form.quad_form_b)
        assert form.norm_b == pytest.approx(np.linalg.det(D))


class TestTracedState:
    def test_vacuum(self):
        s = w_traced(ConditionalParams(0.0, 0.0, eta=0.5))
        np.testing.assert_allclose(s.cov, np.eye(4), atol=1e-14)

    def test_equals_reduction(self):
        p = ConditionalParams(1.0, 1.0, 0.2, -0.4, 0.7)
        full = su21_state(TripartitePhotonNumbers(1.0, 1.0, 0.2, -0.4))
        np.testing.assert_allclose(w_traced(p).cov,
                                   reduce_state(full, (0, 1)).cov, atol=1e-14)

    def test_wigner_positive(self):
        s = w_traced(ConditionalParams(1.0, 0.5))
        rng = np.random.default_rng(9)
        pts = rng.normal(0, 2, size=(200, 4))
        assert np.all(wigner_eval(s, pts) > 0)
