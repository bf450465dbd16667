"""Dichotomized-quadrature (homodyne) correlators.

Quadrature outcomes are binned by sign.  For Gaussian states the correlator
is the bivariate-normal orthant arcsine of the quadrature correlation
coefficient, so it never beats the two-party local bound; the heralded
non-Gaussian state has a closed form in the combined angle psi and stays
below the classical sawtooth in magnitude everywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conditional import ConditionalParams, two_gaussian_form
from .errors import InvalidParameterError, PrecisionError
from .gaussian import GaussianState
from .bell_dp import BellValue


@dataclass(frozen=True)
class HomodyneSetting:
    """Local-oscillator phases of the two homodyne detectors."""

    theta: float
    phi: float

    def __post_init__(self):
        if not np.isfinite([self.theta, self.phi]).all():
            raise InvalidParameterError("phases must be finite")

    def combined(self, phi2: float = 0.0) -> float:
        """The angle the heralded-state correlator actually depends on."""
        return self.theta + self.phi + phi2


def classical_reference(psi: float) -> float:
    """Sawtooth correlation of two perfectly correlated classical dichotomic spins.

    1 - 2|psi|/pi on [-pi, pi], continued 2pi-periodically.
    """
    w = math.remainder(psi, 2.0 * math.pi)  # wraps into [-pi, pi]
    return 1.0 - 2.0 * abs(w) / math.pi


def e_h_gaussian(s: GaussianState, theta: float, phi: float) -> float:
    """Sign-binned quadrature correlator of a two-mode Gaussian state:
    (2/pi) arcsin(rho) with rho read off the covariance matrix."""
    if s.n_modes != 2:
        raise InvalidParameterError("two-mode Gaussian state required")
    v1 = np.array([math.cos(theta), 0.0, math.sin(theta), 0.0])
    v2 = np.array([0.0, math.cos(phi), 0.0, math.sin(phi)])
    var1 = float(v1 @ s.cov @ v1)
    var2 = float(v2 @ s.cov @ v2)
    cov = float(v1 @ s.cov @ v2)
    rho = cov / math.sqrt(var1 * var2)
    if abs(rho) > 1.0 + 1e-12:
        raise PrecisionError(f"quadrature correlation {rho} outside [-1, 1]")
    rho = max(-1.0, min(1.0, rho))
    return (2.0 / math.pi) * math.asin(rho)


def e_h_conditional(p: ConditionalParams, setting: HomodyneSetting) -> float:
    """Sign-binned quadrature correlator of the heralded state.

    Closed two-arctangent form in psi = theta + phi + phi2.  The overall sign
    is fixed by the Fock orthant oracle (positive correlation at psi = 0);
    zero at psi = pi/2 by the odd symmetry in cos(psi).
    """
    if p.eta <= 0.0:
        raise InvalidParameterError("eta must be > 0 for the heralded state")
    if p.n2 <= 0.0 or p.n3 <= 0.0:
        raise PrecisionError("the closed form needs n2 > 0 and n3 > 0")
    psi = setting.combined(p.phi2)
    n1, n2, n3, eta = p.n2 + p.n3, p.n2, p.n3, p.eta
    form = two_gaussian_form(p)
    det_vp, det_d = form.norm_a, form.norm_b
    cs = math.cos(psi)
    z1 = (1 + 2 * n1) * (1 + 2 * n2) / ((1 + n1) * n2)
    z2 = (1 + 2 * n1 - n3 * eta) * (1 + 2 * n2 + n3 * eta) / ((1 + n1) * n2)
    for z in (z1, z2):
        if z - 4 * cs * cs <= 0:
            raise PrecisionError("arctangent argument left its domain")
    pref = (1 + eta * n3) / (4 * eta * n3)
    t1 = -(2 / math.pi) ** 2 / math.sqrt(det_vp) * (
        2 * (1 + 2 * n3) * math.pi * math.atan(2 * cs / math.sqrt(z1 - 4 * cs * cs)))
    t2 = -(1 / eta) * (2 / math.pi) ** 2 * 2 / math.sqrt(det_d) * (
        2 * math.pi * (-1 + n3 * (eta - 2)) / (1 + n3 * eta)
        * math.atan(2 * cs / math.sqrt(z2 - 4 * cs * cs)))
    # the printed closed form carries a global minus sign relative to the
    # orthant oracle; return the oracle-signed value
    return -pref * (t1 + t2)


def b2_h(target: ConditionalParams | GaussianState,
         theta: float, theta_p: float, phi: float, phi_p: float) -> BellValue:
    """CHSH combination of four sign-binned quadrature correlators."""
    if isinstance(target, ConditionalParams):
        def corr(th, ph):
            return e_h_conditional(target, HomodyneSetting(th, ph))
    else:
        def corr(th, ph):
            return e_h_gaussian(target, th, ph)
    val = abs(corr(theta, phi) + corr(theta, phi_p)
              + corr(theta_p, phi) - corr(theta_p, phi_p))
    return BellValue(val, 2, (theta, theta_p, phi, phi_p))
