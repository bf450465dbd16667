"""Brute-force truncated Fock-space engine.

Everything here is an independent numerical oracle: states are explicit
amplitude tensors or density matrices over a truncated number basis, and all
expectation values are computed by operator algebra with no reference to the
closed forms they are used to check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm

from .errors import CutoffTooSmallError, InvalidParameterError, PrecisionError
from .gaussian import TripartitePhotonNumbers

TAIL_BUDGET = 1e-6


@dataclass(frozen=True)
class FockPureState:
    """Pure state as a complex amplitude tensor of shape (cutoff,)*n_modes."""

    n_modes: int
    cutoff: int
    amps: NDArray[np.complex128]

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        if a.shape != (self.cutoff,) * self.n_modes:
            raise InvalidParameterError("amplitude tensor shape does not match cutoff/modes")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class FockDensityOperator:
    """Density operator over the truncated product basis.

    ``matrix`` has shape (cutoff**n_modes,)*2; use ``tensor()`` for the
    per-mode index view (k_1..k_n, b_1..b_n).
    """

    n_modes: int
    cutoff: int
    matrix: NDArray[np.complex128]

    def __post_init__(self):
        dim = self.cutoff**self.n_modes
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (dim, dim):
            raise InvalidParameterError(f"matrix must be {dim}x{dim}")
        if np.max(np.abs(m - m.conj().T)) > 1e-9:
            raise InvalidParameterError("density matrix must be Hermitian")
        tr = np.real(np.trace(m))
        if abs(tr - 1.0) > 1e-9:
            raise InvalidParameterError(f"trace must be 1, got {tr}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def tensor(self) -> NDArray[np.complex128]:
        return self.matrix.reshape((self.cutoff,) * (2 * self.n_modes))

    def min_eigenvalue(self) -> float:
        return float(np.min(np.linalg.eigvalsh(self.matrix)))


def su21_fock(p: TripartitePhotonNumbers, cutoff: int,
              tail_budget: float = TAIL_BUDGET) -> FockPureState:
    """Number-basis amplitudes of the interlinked-interaction state.

    Support is |p+q, p, q> with amplitude
    (1+N1)^{-1/2} x^{p/2} y^{q/2} e^{-i(p phi2 + q phi3)} sqrt((p+q)!/(p! q!)),
    x = N2/(1+N1), y = N3/(1+N1).
    """
    if cutoff < 2:
        raise InvalidParameterError("cutoff must be >= 2")
    n1 = p.n1
    tail = (n1 / (1 + n1)) ** cutoff if n1 > 0 else 0.0
    if tail > tail_budget:
        need = math.ceil(math.log(tail_budget) / math.log(n1 / (1 + n1)))
        raise CutoffTooSmallError(
            f"tail mass {tail:.3e} exceeds {tail_budget:.1e}; use cutoff >= {need}", need
        )
    x = p.n2 / (1 + n1)
    y = p.n3 / (1 + n1)
    amps = np.zeros((cutoff,) * 3, dtype=complex)
    for pp in range(cutoff):
        if x == 0.0 and pp > 0:
            break
        for q in range(cutoff - pp):
            if y == 0.0 and q > 0:
                break
            lg = 0.5 * (math.lgamma(pp + q + 1) - math.lgamma(pp + 1) - math.lgamma(q + 1))
            mag = (1 + n1) ** -0.5 * x ** (pp / 2) * y ** (q / 2) * math.exp(lg)
            amps[pp + q, pp, q] = mag * np.exp(-1j * (pp * p.phi2 + q * p.phi3))
    return FockPureState(3, cutoff, amps)


def twb_fock(x: float, cutoff: int, tail_budget: float = TAIL_BUDGET) -> FockPureState:
    """Twin beam sqrt(1-X^2) sum_n X^n |n,n> truncated at ``cutoff``."""
    if not 0.0 <= x < 1.0:
        raise InvalidParameterError("X must lie in [0, 1)")
    if cutoff < 2:
        raise InvalidParameterError("cutoff must be >= 2")
    tail = x ** (2 * cutoff)
    if tail > tail_budget:
        need = math.ceil(math.log(tail_budget) / (2 * math.log(x)))
        raise CutoffTooSmallError(
            f"tail mass {tail:.3e} exceeds {tail_budget:.1e}; use cutoff >= {need}", need
        )
    amps = np.zeros((cutoff, cutoff), dtype=complex)
    amps[np.arange(cutoff), np.arange(cutoff)] = np.sqrt(1 - x**2) * x ** np.arange(cutoff)
    return FockPureState(2, cutoff, amps)


# ---------------------------------------------------------------------------
# mode operators

@lru_cache(maxsize=32)
def _destroy(cutoff: int) -> NDArray[np.float64]:
    a = np.zeros((cutoff, cutoff))
    ns = np.arange(1, cutoff)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def displacement(alpha: complex, cutoff: int) -> NDArray[np.complex128]:
    """D(alpha) = exp(alpha a^dag - alpha* a) with the generator truncated first."""
    a = _destroy(cutoff)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


@lru_cache(maxsize=32)
def _parity(cutoff: int) -> NDArray[np.float64]:
    d = np.ones(cutoff)
    d[1::2] = -1.0
    return d


def _sz(cutoff: int) -> NDArray[np.float64]:
    # odd number states +1, even -1, exactly as defined
    return np.diag(-_parity(cutoff))


def _s_minus(cutoff: int) -> NDArray[np.float64]:
    m = np.zeros((cutoff, cutoff))
    ev = np.arange(0, cutoff - 1, 2)
    m[ev, ev + 1] = 1.0
    return m


def pseudospin_axis_op(theta: float, phi: float, cutoff: int) -> NDArray[np.complex128]:
    """d.s = s_z cos(theta) + sin(theta)(e^{i phi} s_- + e^{-i phi} s_+)."""
    sm = _s_minus(cutoff)
    return (_sz(cutoff) * np.cos(theta)
            + np.sin(theta) * (np.exp(1j * phi) * sm + np.exp(-1j * phi) * sm.T))


def _apply_mode_op(amps: NDArray, op: NDArray, mode: int) -> NDArray:
    out = np.tensordot(op, amps, axes=(1, mode))
    return np.moveaxis(out, 0, mode)


def _expect_product(state: FockPureState, ops: Sequence[NDArray]) -> float:
    phi = state.amps
    for j, op in enumerate(ops):
        phi = _apply_mode_op(phi, op, j)
    return float(np.real(np.sum(state.amps.conj() * phi)))


def displaced_parity_expect(state: FockPureState | FockDensityOperator,
                            alphas: Sequence[complex]) -> float:
    """<prod_j D(a_j)(-1)^{n_j} D^dag(a_j)>, in [-1, 1].

    Guard: each |alpha|^2 <= cutoff/10, keeping the displaced state far from
    the truncation edge.
    """
    cutoff = state.cutoff
    alphas = [complex(a) for a in alphas]
    if len(alphas) != state.n_modes:
        raise InvalidParameterError("one displacement per mode required")
    for a in alphas:
        if abs(a) ** 2 > cutoff / 10.0:
            raise PrecisionError(
                f"|alpha|^2 = {abs(a)**2:.3f} exceeds cutoff/10 = {cutoff / 10:.1f}"
            )
    par = _parity(cutoff)
    if isinstance(state, FockPureState):
        phi = state.amps
        for j, a in enumerate(alphas):
            phi = _apply_mode_op(phi, displacement(a, cutoff).conj().T, j)
        w = np.abs(phi) ** 2
        for j in range(state.n_modes):
            shape = [1] * state.n_modes
            shape[j] = cutoff
            w = w * par.reshape(shape)
        return float(np.sum(w))
    ops = []
    for a in alphas:
        d = displacement(a, cutoff)
        ops.append(d @ (par[:, None] * d.conj().T))
    return _expect_density(state, ops)


def _expect_density(state: FockDensityOperator, ops: Sequence[NDArray]) -> float:
    rho = state.tensor()
    n = state.n_modes
    if n == 2:
        return float(np.real(np.einsum("abcd,ca,db->", rho, ops[0], ops[1])))
    if n == 3:
        return float(np.real(np.einsum("abcdef,da,eb,fc->", rho, ops[0], ops[1], ops[2])))
    raise InvalidParameterError("density-operator expectations support 2 or 3 modes")


def pseudospin_expect(state: FockPureState | FockDensityOperator,
                      axes: Sequence[tuple[float, float]]) -> float:
    """<prod_j d_j . s_j> for one (theta, phi) pair per mode; even cutoff only."""
    if state.cutoff % 2 != 0:
        raise InvalidParameterError("pseudospin requires an even cutoff")
    if len(axes) != state.n_modes:
        raise InvalidParameterError("one (theta, phi) pair per mode required")
    ops = [pseudospin_axis_op(th, ph, state.cutoff) for th, ph in axes]
    if isinstance(state, FockPureState):
        return _expect_product(state, ops)
    return _expect_density(state, ops)


def onoff_condition(state: FockPureState, mode: int,
                    eta: float) -> tuple[float, FockDensityOperator | None]:
    """Herald at least one photon on ``mode`` with an ON/OFF detector.

    Applies Pi_1 = I - sum_n (1-eta)^n |n><n| on the chosen mode, traces that
    mode out and renormalizes.  Returns (click probability, conditioned
    operator); the operator is None in the degenerate eta=0 case.
    """
    if not 0.0 <= eta <= 1.0:
        raise InvalidParameterError("eta must lie in [0, 1]")
    if not 0 <= mode < state.n_modes:
        raise InvalidParameterError("mode index out of range")
    cutoff = state.cutoff
    w = 1.0 - (1.0 - eta) ** np.arange(cutoff)
    amps = np.moveaxis(state.amps, mode, -1)
    rest = state.n_modes - 1
    flat = amps.reshape(cutoff**rest, cutoff)
    blocks = flat.conj().T @ flat  # overlap of the per-outcome slices
    prob = float(np.real(np.sum(w * np.diag(blocks).real)))
    if eta == 0.0 or prob <= 0.0:
        return 0.0, None
    rho = (flat * w) @ flat.conj().T / prob
    return prob, FockDensityOperator(rest, cutoff, rho)


# ---------------------------------------------------------------------------
# dichotomized quadratures

def _hermite_psi(cutoff: int, xs: NDArray) -> NDArray:
    """Oscillator eigenfunctions psi_n(x), vacuum variance 1/2."""
    out = np.zeros((cutoff, xs.size))
    out[0] = np.pi**-0.25 * np.exp(-xs**2 / 2)
    if cutoff > 1:
        out[1] = np.sqrt(2.0) * xs * out[0]
    for n in range(2, cutoff):
        out[n] = np.sqrt(2.0 / n) * xs * out[n - 1] - np.sqrt((n - 1) / n) * out[n - 2]
    return out


@lru_cache(maxsize=16)
def _half_line_matrices(cutoff: int, n_nodes: int = 800) -> tuple[NDArray, NDArray]:
    """(H, G): H_{nm} = int_0^inf psi_n psi_m, G = sgn-quadrature matrix 2H - I restricted.

    Gauss-Legendre on [0, R] with R past the classical turning point of the
    highest basis state.
    """
    from numpy.polynomial.legendre import leggauss

    R = np.sqrt(2.0 * cutoff) + 8.0
    xg, wg = leggauss(n_nodes)
    xs = (xg + 1) * R / 2
    ws = wg * R / 2
    psi = _hermite_psi(cutoff, xs)
    H = np.einsum("nk,mk,k->nm", psi, psi, ws)
    n = np.arange(cutoff)
    odd = ((n[:, None] + n[None, :]) % 2) == 1
    even = ~odd
    # parity kills odd-sum entries on the full line; half-line even-sum entries are delta/2
    H = np.where(odd, H, 0.0) + np.where(even, np.eye(cutoff) * 0.5, 0.0)
    G = np.where(odd, 2 * H, 0.0)
    return H, G


def _rotated(state: FockPureState | FockDensityOperator, thetas: Sequence[float]):
    """Apply per-mode phase rotations so x^theta becomes the plain x quadrature."""
    cutoff = state.cutoff
    n = np.arange(cutoff)
    if isinstance(state, FockPureState):
        amps = state.amps.astype(complex)
        for j, th in enumerate(thetas):
            shape = [1] * state.n_modes
            shape[j] = cutoff
            amps = amps * np.exp(-1j * th * n).reshape(shape)
        return FockPureState(state.n_modes, cutoff, amps)
    rho = state.tensor().astype(complex)
    nm = state.n_modes
    for j, th in enumerate(thetas):
        ph = np.exp(-1j * th * n)
        shape = [1] * (2 * nm)
        shape[j] = cutoff
        rho = rho * ph.reshape(shape)
        shape = [1] * (2 * nm)
        shape[nm + j] = cutoff
        rho = rho * ph.conj().reshape(shape)
    dim = cutoff**nm
    return FockDensityOperator(nm, cutoff, rho.reshape(dim, dim))


def orthant_probabilities(state: FockPureState | FockDensityOperator,
                          theta: float, phi: float) -> tuple[float, float, float, float]:
    """(P++, P+-, P-+, P--) of the sign-binned joint quadrature distribution."""
    if state.n_modes != 2:
        raise InvalidParameterError("orthant probabilities are defined for two modes")
    H, _ = _half_line_matrices(state.cutoff)
    rot = _rotated(state, [theta, phi])
    eye = np.eye(state.cutoff)
    Hm = H
    Hp = eye - H

    def ex(o1, o2):
        if isinstance(rot, FockPureState):
            return _expect_product(rot, [o1, o2])
        return _expect_density(rot, [o1, o2])

    ppp = ex(Hm, Hm)
    ppm = ex(Hm, Hp)
    pmp = ex(Hp, Hm)
    pmm = ex(Hp, Hp)
    total = ppp + ppm + pmp + pmm
    if abs(total - 1.0) > 1e-6:
        raise PrecisionError(f"orthant probabilities sum to {total}, quadrature did not converge")
    return ppp, ppm, pmp, pmm


def quadrature_orthant_expect(state: FockPureState | FockDensityOperator,
                              theta: float, phi: float) -> float:
    """E_H = P++ + P-- - P+- - P-+ with the sign domains fixed to R+/R-."""
    if state.n_modes != 2:
        raise InvalidParameterError("the homodyne correlator is defined for two modes")
    _, G = _half_line_matrices(state.cutoff)
    rot = _rotated(state, [theta, phi])
    if isinstance(rot, FockPureState):
        return _expect_product(rot, [G, G])
    return _expect_density(rot, [G, G])


def wigner_reconstruct(state: FockPureState | FockDensityOperator,
                       point: NDArray) -> float:
    """Wigner value at (x_1..x_n, y_1..y_n) from the displaced-parity identity."""
    pt = np.asarray(point, dtype=float)
    n = state.n_modes
    if pt.shape != (2 * n,):
        raise InvalidParameterError(f"point must have length {2 * n}")
    alphas = (pt[:n] + 1j * pt[n:]) / np.sqrt(2.0)
    return displaced_parity_expect(state, alphas) / np.pi**n
