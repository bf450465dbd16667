"""Displaced-parity correlators and their Bell combinations.

For a zero-mean Gaussian state with covariance C the correlator is

    E(alpha_1..alpha_n) = det(C)^{-1/2} exp(-2 u^T C^{-1} u),

with u = (Re alpha_1..Re alpha_n, Im alpha_1..Im alpha_n) in coherent-amplitude
units; for the heralded two-mode state the Wigner two-Gaussian form replaces
the single exponential.  Built-in displacement families reproduce the known
optimal parameterizations for each state; their docstrings record the
orientation and the units of the magnitude parameter J.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .conditional import ConditionalParams, two_gaussian_form
from .errors import InvalidParameterError
from .gaussian import (
    GaussianState,
    TripartitePhotonNumbers,
    ghz_state,
    su21_state,
    twb_state,
    _inverse,
)

_SQRT2 = math.sqrt(2.0)
_B2_BOUND = 2.0 * _SQRT2 + 1e-9
_B3_BOUND = 4.0 + 1e-9


@dataclass(frozen=True)
class DpSettings:
    """One displacement per mode for each of the two measurement choices."""

    unprimed: tuple[complex, ...]
    primed: tuple[complex, ...]
    j_mag: float | None = None

    def __post_init__(self):
        if len(self.unprimed) != len(self.primed):
            raise InvalidParameterError("unprimed and primed settings must have equal length")
        if self.j_mag is not None and self.j_mag < 0:
            raise InvalidParameterError("j_mag must be >= 0")
        object.__setattr__(self, "unprimed", tuple(complex(a) for a in self.unprimed))
        object.__setattr__(self, "primed", tuple(complex(a) for a in self.primed))


@dataclass(frozen=True)
class BellValue:
    """A Bell-combination value together with the settings that produced it."""

    value: float
    n_parties: int
    settings: object = None

    def __post_init__(self):
        bound = _B2_BOUND if self.n_parties == 2 else _B3_BOUND
        if abs(self.value) > bound:
            raise InvalidParameterError(
                f"|B| = {abs(self.value)} exceeds the {self.n_parties}-party quantum bound"
            )


def e_dp_gaussian(s: GaussianState, alphas: Sequence[complex]) -> float:
    """Displaced-parity correlator of a Gaussian state; in (0, 1]."""
    if len(alphas) != s.n_modes:
        raise InvalidParameterError("one displacement per mode required")
    al = np.asarray(alphas, dtype=complex)
    u = np.concatenate([al.real, al.imag])
    inv = _inverse(s.cov)
    return float(s.det() ** -0.5 * np.exp(-2.0 * u @ inv @ u))


def e_dp_conditional(p: ConditionalParams, alphas: Sequence[complex]) -> float:
    """Displaced-parity correlator of the heralded two-mode state; in [-1, 1]."""
    if len(alphas) != 2:
        raise InvalidParameterError("the heralded state has two modes")
    al = np.asarray(alphas, dtype=complex)
    v = _SQRT2 * np.concatenate([al.real, al.imag])
    return float(np.pi**2 * two_gaussian_form(p).eval(v))


def e_dp_ghz_closed(r: float, alphas: Sequence[complex]) -> float:
    """Explicit correlator of the GHZ-type state, written out directly.

    Expressed in the orientation of the covariance construction (x-sum and
    y-difference directions squeezed); an independent code path from
    ``e_dp_gaussian`` used to cross-check it.
    """
    al = np.asarray(alphas, dtype=complex)
    if al.shape != (3,):
        raise InvalidParameterError("three displacements required")
    x, y = al.real, al.imag
    e2r = math.exp(2.0 * r)
    quad_fast = (x.sum() ** 2 + (y[1] - y[2]) ** 2 + (y[1] - y[0]) ** 2 + (y[0] - y[2]) ** 2)
    quad_slow = (y.sum() ** 2 + (x[1] - x[2]) ** 2 + (x[1] - x[0]) ** 2 + (x[0] - x[2]) ** 2)
    return math.exp(-(2.0 / 3.0) * (e2r * quad_fast + quad_slow / e2r))


def large_squeezing_residual(settings: DpSettings) -> float:
    """Sum of the three constraint expressions that keep the positive Bell terms
    alive at large squeezing.

    Written in the frame where the optimal symmetric family is imaginary
    (multiply the package's real family by 1j to land in this frame).  Zero
    exactly when every positive correlator survives the large-r limit.
    """
    if len(settings.unprimed) != 3:
        raise InvalidParameterError("three-mode settings required")
    a = np.asarray(settings.unprimed, dtype=complex)
    ap = np.asarray(settings.primed, dtype=complex)
    x, y = a.real, a.imag
    xp, yp = ap.real, ap.imag
    total = 0.0
    for k in range(3):
        yk = y.copy()
        yk[k] = yp[k]
        xk = x.copy()
        xk[k] = xp[k]
        others = [i for i in range(3) if i != k]
        i1, i2 = others
        total += (yk.sum() ** 2 + (xk[i1] - xk[i2]) ** 2
                  + (xk[i1] - xk[k]) ** 2 + (xk[k] - xk[i2]) ** 2)
    return float(total)


def _assemble(correlator, settings: DpSettings, n: int) -> float:
    a, ap = settings.unprimed, settings.primed
    if n == 3:
        return abs(correlator([a[0], a[1], ap[2]])
                   + correlator([a[0], ap[1], a[2]])
                   + correlator([ap[0], a[1], a[2]])
                   - correlator([ap[0], ap[1], ap[2]]))
    return abs(correlator([a[0], a[1]])
               + correlator([a[0], ap[1]])
               + correlator([ap[0], a[1]])
               - correlator([ap[0], ap[1]]))


def b3_dp_general(s: GaussianState, settings: DpSettings) -> BellValue:
    """Three-party Bell-Klyshko combination from displaced-parity correlators."""
    if s.n_modes != 3 or len(settings.unprimed) != 3:
        raise InvalidParameterError("b3_dp_general needs a three-mode state and settings")
    val = _assemble(lambda al: e_dp_gaussian(s, al), settings, 3)
    return BellValue(val, 3, settings)


def b2_dp(target: GaussianState | ConditionalParams, settings: DpSettings) -> BellValue:
    """Two-party CHSH combination from displaced-parity correlators."""
    if len(settings.unprimed) != 2:
        raise InvalidParameterError("two-mode settings required")
    if isinstance(target, ConditionalParams):
        corr = lambda al: e_dp_conditional(target, al)
    else:
        if target.n_modes != 2:
            raise InvalidParameterError("b2_dp needs a two-mode state")
        corr = lambda al: e_dp_gaussian(target, al)
    val = _assemble(corr, settings, 2)
    return BellValue(val, 2, settings)


# ---------------------------------------------------------------------------
# closed forms

def b3_ghz_closed(r: float, j_mag: float) -> BellValue:
    """Closed-form B3 of the GHZ-type state under its symmetric displacement family:

        B3 = 3 exp(-12 e^{-2r} J) - exp(-24 e^{2r} J).

    The sign of the second exponent is fixed by re-deriving the combination
    from the explicit correlator; tends to 3 for large r at fixed J > 0 and
    equals 2 exactly at J = 0.
    """
    if r < 0 or j_mag < 0:
        raise InvalidParameterError("r and J must be >= 0")
    val = 3.0 * math.exp(-12.0 * math.exp(-2.0 * r) * j_mag) \
        - math.exp(-24.0 * math.exp(2.0 * r) * j_mag)
    return BellValue(abs(val), 3, ghz_dp_settings(j_mag))


def b3_su21_closed(n: float, j_mag: float) -> BellValue:
    """Closed-form B3 of the trilinear state, symmetric split n2 = n3 = N/4,
    under the symmetric displacement family (J in phase-space units)."""
    if n < 0 or j_mag < 0:
        raise InvalidParameterError("N and J must be >= 0")
    q = math.sqrt(n * (2.0 + n))
    s2 = math.sqrt(2.0)
    # the ratio of exponentials folded into three non-positive exponents so the
    # expression stays finite at any J*N
    val = (2.0 * math.exp(-j_mag * (6.0 + 1.5 * n - s2 * q))
           + math.exp(-2.0 * j_mag * (3.0 + 3.0 * n - 2.0 * s2 * q))
           - math.exp(-4.0 * j_mag * (3.0 + 3.0 * n + 2.0 * s2 * q)))
    return BellValue(abs(val), 3, su21_sym_dp_settings(j_mag))


# ---------------------------------------------------------------------------
# displacement families (orientation fixed to the covariance construction)

def ghz_dp_settings(j_mag: float) -> DpSettings:
    """Symmetric family for the GHZ-type state: real sqrt(J)(1,1,1) and
    -2 sqrt(J)(1,1,1); J in coherent-amplitude units."""
    w = math.sqrt(j_mag)
    return DpSettings((w, w, w), (-2 * w, -2 * w, -2 * w), j_mag)


def su21_sym_dp_settings(j_mag: float) -> DpSettings:
    """Symmetric family for the trilinear state with phases phi2 = phi3 = pi:
    real sqrt(J/2)(1,1,1) and -2 sqrt(J/2)(1,1,1); J in phase-space units
    (coherent amplitude sqrt(J/2))."""
    w = math.sqrt(j_mag / 2.0)
    return DpSettings((w, w, w), (-2 * w, -2 * w, -2 * w), j_mag)


def su21_opt_dp_settings(j_mag: float) -> DpSettings:
    """Numerically optimized family for the trilinear state with phases
    phi2 = 0, phi3 = pi: imaginary (2/3, 0, 0) and (0, -1, 1) times
    sqrt(J/2); J in phase-space units."""
    w = 1j * math.sqrt(j_mag / 2.0)
    return DpSettings((2.0 / 3.0 * w, 0.0, 0.0), (0.0, -w, w), j_mag)


def twb_dp_settings(j_mag: float) -> DpSettings:
    """Optimal twin-beam family: real (sqrt(J), -sqrt(J)) and
    (-3, 3) sqrt(J); J in coherent-amplitude units."""
    w = math.sqrt(j_mag)
    return DpSettings((w, -w), (-3 * w, 3 * w), j_mag)


def twb_bw_dp_settings(j_mag: float) -> DpSettings:
    """Original two-settings family: zero displacements against
    real (sqrt(J), -sqrt(J)); J in coherent-amplitude units."""
    w = math.sqrt(j_mag)
    return DpSettings((0.0, 0.0), (w, -w), j_mag)


def conditional_dp_settings(j_mag: float) -> DpSettings:
    """Optimized family for the heralded state: real (1, 2) and (3, 0) times
    sqrt(J/2); J in phase-space units."""
    w = math.sqrt(j_mag / 2.0)
    return DpSettings((w, 2 * w), (3 * w, 0.0), j_mag)


# ---------------------------------------------------------------------------
# convenience evaluators for the built-in families

def b3_ghz_dp(r: float, j_mag: float) -> BellValue:
    return b3_dp_general(ghz_state(r), ghz_dp_settings(j_mag))


def su21_sym_state(n: float) -> GaussianState:
    """Trilinear state at the symmetric split n2 = n3 = N/4 with the phases
    the symmetric displacement family assumes."""
    return su21_state(TripartitePhotonNumbers(n / 4.0, n / 4.0, math.pi, math.pi))


def su21_opt_state(n: float) -> GaussianState:
    """Trilinear state at the symmetric split with phases (0, pi) assumed by
    the optimized displacement family."""
    return su21_state(TripartitePhotonNumbers(n / 4.0, n / 4.0, 0.0, math.pi))


def b3_su21_sym_dp(n: float, j_mag: float) -> BellValue:
    return b3_dp_general(su21_sym_state(n), su21_sym_dp_settings(j_mag))


def b3_su21_opt_dp(n: float, j_mag: float) -> BellValue:
    return b3_dp_general(su21_opt_state(n), su21_opt_dp_settings(j_mag))


def b2_twb_dp(n: float, j_mag: float) -> BellValue:
    return b2_dp(twb_state(n), twb_dp_settings(j_mag))


def b2_twb_bw_dp(n: float, j_mag: float) -> BellValue:
    return b2_dp(twb_state(n), twb_bw_dp_settings(j_mag))


def b2_conditional_dp(p: ConditionalParams, j_mag: float) -> BellValue:
    return b2_dp(p, conditional_dp_settings(j_mag))
