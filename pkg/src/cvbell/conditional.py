"""Closed forms for the two-mode state heralded by an ON/OFF click on mode 3.

The heralded state is non-Gaussian: its Wigner function is a difference of two
Gaussians and takes negative values.  The first Gaussian restricts the
covariance to modes 1, 2 and then inverts (a partial trace); the second inverts
the detector-broadened 6x6 covariance first and then restricts (a Gaussian
integral over the measured mode).  The asymmetry is deliberate and is
validated against the Fock oracle in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidParameterError, UndefinedStateError
from .gaussian import GaussianState, TripartitePhotonNumbers, reduce_state, su21_state

_KEEP = (0, 1, 3, 4)  # x1, x2, y1, y2 of the 6x6 (x1 x2 x3 y1 y2 y3) ordering


@dataclass(frozen=True)
class ConditionalParams:
    """Source photon numbers/phases plus the ON/OFF detector efficiency."""

    n2: float
    n3: float
    phi2: float = 0.0
    phi3: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        if not np.all(np.isfinite([self.n2, self.n3, self.phi2, self.phi3, self.eta])):
            raise InvalidParameterError("parameters must be finite")
        if self.n2 < 0 or self.n3 < 0:
            raise InvalidParameterError("photon numbers must be >= 0")
        if not 0.0 <= self.eta <= 1.0:
            raise InvalidParameterError("eta must lie in [0, 1]")

    def photons(self) -> TripartitePhotonNumbers:
        return TripartitePhotonNumbers(self.n2, self.n3, self.phi2, self.phi3)


@dataclass(frozen=True)
class TwoGaussianWigner:
    """Precomputed two-Gaussian form of the heralded Wigner function.

    weight_a/quad_form_a belong to the restricted-then-inverted Gaussian,
    weight_b/quad_form_b to the inverted-then-restricted one; norm_a = det V'
    (4x4), norm_b = det D (6x6).
    """

    weight_a: float
    weight_b: float
    quad_form_a: NDArray[np.float64]
    quad_form_b: NDArray[np.float64]
    norm_a: float
    norm_b: float

    def eval(self, point: NDArray) -> float | NDArray:
        pt = np.asarray(point, dtype=float)
        qa = np.einsum("...i,ij,...j->...", pt, self.quad_form_a, pt)
        qb = np.einsum("...i,ij,...j->...", pt, self.quad_form_b, pt)
        out = self.weight_a * np.exp(-qa) - self.weight_b * np.exp(-qb)
        return float(out) if out.ndim == 0 else out


def p_click(p: ConditionalParams) -> float:
    """Probability that the ON/OFF detector fires: eta N3 / (1 + eta N3)."""
    return p.eta * p.n3 / (1.0 + p.eta * p.n3)


@lru_cache(maxsize=256)
def two_gaussian_form(p: ConditionalParams) -> TwoGaussianWigner:
    """Assemble the heralded-state Wigner function pieces (cached per params)."""
    if p.eta == 0.0:
        raise UndefinedStateError("eta = 0 admits no click; the heralded state is undefined")
    if p.n3 == 0.0:
        raise UndefinedStateError("n3 = 0 admits no click; the heralded state is undefined")
    V = su21_state(p.photons()).cov
    broaden = (2.0 - p.eta) / p.eta
    D = V + np.diag([0.0, 0.0, broaden, 0.0, 0.0, broaden])
    Vp = V[np.ix_(_KEEP, _KEEP)]
    det_vp = float(np.linalg.det(Vp))
    det_d = float(np.linalg.det(D))
    pref = (1.0 + p.eta * p.n3) / (4.0 * p.eta * p.n3)
    wa = pref * (2.0 / np.pi) ** 2 / np.sqrt(det_vp)
    wb = pref * (1.0 / p.eta) * (2.0 / np.pi) ** 2 * 2.0 / np.sqrt(det_d)
    qa = np.linalg.inv(Vp)
    qb = np.linalg.inv(D)[np.ix_(_KEEP, _KEEP)]
    return TwoGaussianWigner(
        weight_a=wa, weight_b=wb, quad_form_a=qa, quad_form_b=qb,
        norm_a=det_vp, norm_b=det_d,
    )


def w1_eval(p: ConditionalParams, point: NDArray) -> float | NDArray:
    """Heralded-state Wigner function at (x1, x2, y1, y2); batched over leading axes."""
    pt = np.asarray(point, dtype=float)
    if pt.shape[-1] != 4:
        raise InvalidParameterError("point must have length 4")
    return two_gaussian_form(p).eval(pt)


def w_traced(p: ConditionalParams) -> GaussianState:
    """Two-mode Gaussian state left after simply discarding mode 3."""
    return reduce_state(su21_state(p.photons()), (0, 1))
