"""Zero-mean Gaussian states at the covariance-matrix level.

The Wigner function convention is

    W(v) = pi^{-n} det(C)^{-1/2} exp(-v C^{-1} v^T),

with v = (x_1..x_n, y_1..y_n) ordered position-block first and the vacuum
covariance equal to the identity (quadrature x = (a e^{-i theta} + h.c.)/sqrt(2),
so each vacuum quadrature has variance 1/2 under W).  All constructors return
pure states with det(C) = 1; reductions of entangled states are mixed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.typing import NDArray

from .errors import ConditioningError, InvalidParameterError, UnsupportedRegimeError

COND_LIMIT = 1e12


@dataclass(frozen=True)
class GaussianState:
    """Zero-mean Gaussian state of ``n_modes`` modes.

    ``cov`` is the 2n x 2n symmetric positive-definite covariance matrix in
    the (x_1..x_n, y_1..y_n) ordering, dimensionless with vacuum = identity.
    """

    n_modes: int
    cov: NDArray[np.float64]

    def __post_init__(self):
        if self.n_modes < 1:
            raise InvalidParameterError("n_modes must be a positive integer")
        cov = np.asarray(self.cov, dtype=float)
        d = 2 * self.n_modes
        if cov.shape != (d, d):
            raise InvalidParameterError(f"covariance must be {d}x{d}, got {cov.shape}")
        if not np.all(np.isfinite(cov)):
            raise InvalidParameterError("covariance has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > 1e-9 * scale:
            raise InvalidParameterError("covariance must be symmetric")
        cov = 0.5 * (cov + cov.T)
        try:
            np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            raise InvalidParameterError("covariance must be positive definite") from None
        cov.setflags(write=False)
        object.__setattr__(self, "cov", cov)

    def det(self) -> float:
        return float(np.linalg.det(self.cov))


@dataclass(frozen=True)
class CouplingParams:
    """Couplings of the two interlinked bilinear interactions, plus the time."""

    gamma1: complex
    gamma2: complex
    t: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "t"):
            v = getattr(self, name)
            if not np.all(np.isfinite([np.real(v), np.imag(v)])):
                raise InvalidParameterError(f"{name} must be finite")
        if abs(self.gamma2) <= abs(self.gamma1):
            raise UnsupportedRegimeError(
                "|gamma2| must exceed |gamma1| (oscillatory regime only)"
            )


@dataclass(frozen=True)
class TripartitePhotonNumbers:
    """Mean photon numbers of modes 2 and 3, plus their phases.

    Mode 1 always carries n1 = n2 + n3 photons.
    """

    n2: float
    n3: float
    phi2: float = 0.0
    phi3: float = 0.0

    def __post_init__(self):
        vals = (self.n2, self.n3, self.phi2, self.phi3)
        if not np.all(np.isfinite(vals)):
            raise InvalidParameterError("photon numbers and phases must be finite")
        if self.n2 < 0 or self.n3 < 0:
            raise InvalidParameterError("photon numbers must be >= 0")

    @property
    def n1(self) -> float:
        return self.n2 + self.n3


def ghz_state(r: float) -> GaussianState:
    """Tripartite GHZ-type state: three equally squeezed modes mixed symmetrically.

    The x-block is R on the diagonal and S off-diagonal, the y-block T diagonal
    and -S off-diagonal, with R = cosh2r + sinh2r/3, T = cosh2r - sinh2r/3,
    S = -(4/3) cosh r sinh r.  Total mean photon number is 3 sinh^2 r.
    """
    if not np.isfinite(r):
        raise InvalidParameterError("squeezing parameter must be finite")
    if r < 0:
        raise InvalidParameterError("squeezing parameter must be >= 0")
    R = np.cosh(2 * r) + np.sinh(2 * r) / 3
    T = np.cosh(2 * r) - np.sinh(2 * r) / 3
    S = -4.0 / 3.0 * np.cosh(r) * np.sinh(r)
    X = np.full((3, 3), S)
    np.fill_diagonal(X, R)
    Y = np.full((3, 3), -S)
    np.fill_diagonal(Y, T)
    cov = np.zeros((6, 6))
    cov[:3, :3] = X
    cov[3:, 3:] = Y
    return GaussianState(3, cov)


def ghz_total_photons(r: float) -> float:
    """Mean total photon number of ``ghz_state(r)``."""
    return 3.0 * np.sinh(r) ** 2


def ghz_r_from_photons(n: float) -> float:
    """Squeezing parameter at which ``ghz_state`` carries n photons in total."""
    if n < 0:
        raise InvalidParameterError("photon number must be >= 0")
    return float(np.arcsinh(np.sqrt(n / 3.0)))


def su21_state(p: TripartitePhotonNumbers) -> GaussianState:
    """Tripartite state of the interlinked bilinear interactions (SU(2,1) coherent state).

    Mode 1 is perfectly photon-number correlated with modes 2 and 3
    (n1 = n2 + n3).  Covariance entries follow the pairwise two-mode-squeezing
    (modes 1-2, 1-3) and beam-splitter-like (modes 2-3) correlations.
    """
    n1 = p.n1
    A = 2 * np.sqrt(p.n2 * (1 + n1)) * np.cos(p.phi2)
    D = 2 * np.sqrt(p.n2 * (1 + n1)) * np.sin(p.phi2)
    F = 2 * n1 + 1
    B = 2 * np.sqrt(p.n3 * (1 + n1)) * np.cos(p.phi3)
    E = 2 * np.sqrt(p.n3 * (1 + n1)) * np.sin(p.phi3)
    G = 2 * p.n2 + 1
    C = 2 * np.sqrt(p.n2 * p.n3) * np.cos(p.phi2 - p.phi3)
    L = 2 * np.sqrt(p.n2 * p.n3) * np.sin(p.phi2 - p.phi3)
    H = 2 * p.n3 + 1
    cov = np.array(
        [
            [F, A, B, 0, -D, -E],
            [A, G, C, -D, 0, L],
            [B, C, H, -E, -L, 0],
            [0, -D, -E, F, -A, -B],
            [-D, 0, -L, -A, G, C],
            [-E, L, 0, -B, C, H],
        ]
    )
    return GaussianState(3, cov)


def twb_state(n: float) -> GaussianState:
    """Twin-beam (two-mode squeezed vacuum) with mean total photon number n.

    Diagonal cosh2r; x1x2 block +sinh2r; y1y2 block -sinh2r; n = 2 sinh^2 r.
    """
    if not np.isfinite(n):
        raise InvalidParameterError("photon number must be finite")
    if n < 0:
        raise InvalidParameterError("photon number must be >= 0")
    r = np.arcsinh(np.sqrt(n / 2.0))
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    cov = np.diag([c, c, c, c]).astype(float)
    cov[0, 1] = cov[1, 0] = s
    cov[2, 3] = cov[3, 2] = -s
    return GaussianState(2, cov)


def coupling_to_photons(c: CouplingParams) -> TripartitePhotonNumbers:
    """Photon numbers generated from vacuum by the interlinked couplings at time t."""
    g1, g2 = abs(c.gamma1), abs(c.gamma2)
    omega = np.sqrt(g2**2 - g1**2)
    n2 = (g1**2 * g2**2 / omega**4) * (np.cos(omega * c.t) - 1.0) ** 2
    n3 = (g1**2 / omega**2) * np.sin(omega * c.t) ** 2
    return TripartitePhotonNumbers(n2=float(n2), n3=float(n3))


def _inverse(cov: NDArray[np.float64]) -> NDArray[np.float64]:
    cond = np.linalg.cond(cov)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise ConditioningError(
            f"covariance condition number {cond:.3e} exceeds guard {COND_LIMIT:.0e}"
        )
    # SPD inverse through Cholesky
    chol = np.linalg.cholesky(cov)
    inv_chol = np.linalg.inv(chol)
    return inv_chol.T @ inv_chol


def wigner_eval(s: GaussianState, point: NDArray[np.float64]) -> float | NDArray[np.float64]:
    """Wigner function at ``point`` = (x_1..x_n, y_1..y_n); strictly positive.

    Accepts a trailing-dimension batch: shape (..., 2n) returns shape (...).
    """
    pt = np.asarray(point, dtype=float)
    d = 2 * s.n_modes
    if pt.shape[-1] != d:
        raise InvalidParameterError(f"point must have length {d}")
    inv = _inverse(s.cov)
    quad = np.einsum("...i,ij,...j->...", pt, inv, pt)
    out = np.pi ** (-s.n_modes) * s.det() ** -0.5 * np.exp(-quad)
    return float(out) if out.ndim == 0 else out


def reduce_state(s: GaussianState, keep: Iterable[int]) -> GaussianState:
    """Partial trace down to the modes in ``keep`` (0-based indices).

    Tracing a Gaussian state just deletes the rows/columns of the dropped
    modes from the covariance matrix.
    """
    modes = sorted(set(int(k) for k in keep))
    if not modes:
        raise InvalidParameterError("keep must be a nonempty set of mode indices")
    if modes[0] < 0 or modes[-1] >= s.n_modes:
        raise InvalidParameterError(f"mode indices must lie in [0, {s.n_modes - 1}]")
    idx = modes + [m + s.n_modes for m in modes]
    sub = s.cov[np.ix_(idx, idx)]
    return GaussianState(len(modes), sub)
