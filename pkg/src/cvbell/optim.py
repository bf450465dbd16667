"""Deterministic scalar and small-dimension maximizers.

No stochastic search anywhere: coarse grids pick a bracket, golden-section
refines it, ties break toward the lowest index.  Identical inputs give
bit-identical results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidParameterError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ScanResult:
    arg_max: NDArray[np.float64]
    max_value: float
    evaluations: int
    bracket: NDArray[np.float64]


def _golden_max(f: Callable[[float], float], lo: float, hi: float,
                tol: float) -> tuple[float, float, int]:
    """Golden-section maximum on [lo, hi]; returns (x, f(x), evaluations)."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        evals += 1
    x = c if fc >= fd else d
    fx = fc if fc >= fd else fd
    return x, fx, evals


def maximize_scalar(f: Callable[[float], float], lo: float, hi: float,
                    tol: float = 1e-8, coarse: int = 256) -> ScanResult:
    """Coarse scan then golden-section refinement of a scalar function."""
    if not lo < hi:
        raise InvalidParameterError("need lo < hi")
    xs = np.linspace(lo, hi, coarse)
    vals = np.array([f(x) for x in xs], dtype=float)
    if not np.all(np.isfinite(vals)):
        raise InvalidParameterError("objective returned non-finite values on the scan grid")
    i = int(np.argmax(vals))
    best_x, best_v = float(xs[i]), float(vals[i])
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, coarse - 1)])
    evals = coarse
    if b > a:
        x, v, n = _golden_max(f, a, b, tol)
        evals += n
        if v > best_v:
            best_x, best_v = x, v
    return ScanResult(
        arg_max=np.array([best_x]), max_value=best_v,
        evaluations=evals, bracket=np.array([b - a]),
    )


def maximize_angles(f: Callable[[NDArray], NDArray], dim: int,
                    grid: int = 32, tol: float = 1e-8,
                    lo: float = 0.0, hi: float = 2.0 * math.pi,
                    max_passes: int = 60, chunk: int = 1 << 20) -> ScanResult:
    """Full product-grid scan plus coordinate-wise golden-section passes.

    ``f`` must be vectorized: it receives an (m, dim) array and returns (m,).
    """
    if dim < 1 or dim > 6:
        raise InvalidParameterError("dim must lie in 1..6")
    axis = np.linspace(lo, hi, grid, endpoint=False)
    best_v = -np.inf
    best_idx = None
    total = grid**dim
    n_lead = int(np.ceil(np.log(max(total // chunk, 1)) / np.log(grid))) if total > chunk else 0
    tail_dims = dim - n_lead
    tail_pts = np.stack(
        np.meshgrid(*([axis] * tail_dims), indexing="ij"), axis=-1
    ).reshape(-1, tail_dims) if tail_dims else np.zeros((1, 0))
    evals = 0
    lead_shape = (grid,) * n_lead
    for lead in np.ndindex(*lead_shape) if n_lead else [()]:
        lead_vals = np.array([axis[k] for k in lead])
        pts = np.empty((tail_pts.shape[0], dim))
        pts[:, :n_lead] = lead_vals
        pts[:, n_lead:] = tail_pts
        vals = np.asarray(f(pts), dtype=float)
        evals += pts.shape[0]
        j = int(np.argmax(vals))
        if vals[j] > best_v:
            best_v = float(vals[j])
            best_idx = pts[j].copy()
    theta = np.asarray(best_idx, dtype=float)
    step = (hi - lo) / grid

    def f1(x: float, k: int) -> float:
        t = theta.copy()
        t[k] = x
        return float(f(t[None, :])[0])

    width = np.full(dim, step)
    for _ in range(max_passes):
        improved = 0.0
        for k in range(dim):
            x, v, n = _golden_max(lambda u: f1(u, k), theta[k] - step, theta[k] + step, tol)
            evals += n
            if v > best_v:
                improved = max(improved, v - best_v)
                best_v = v
                theta[k] = x
            width[k] = tol
        if improved < tol:
            break
    return ScanResult(arg_max=theta, max_value=best_v, evaluations=evals, bracket=width)


def klyshko_max(mags: Sequence[float], grid: int = 32,
                tol: float = 1e-10) -> ScanResult:
    """Maximal three-party Bell-Klyshko combination for the correlator family

        E = cos cos cos - g1 cos sin sin - g2 sin cos sin - g3 sin sin cos

    over the six polar angles.  The full grid^6 scan is computed exactly via
    pairwise max-tensors in O(grid^4) memory, then refined coordinate-wise.
    """
    g1, g2, g3 = (float(g) for g in mags)
    th = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    c, s = np.cos(th), np.sin(th)
    E = (np.einsum("i,j,k->ijk", c, c, c)
         - g1 * np.einsum("i,j,k->ijk", c, s, s)
         - g2 * np.einsum("i,j,k->ijk", s, c, s)
         - g3 * np.einsum("i,j,k->ijk", s, s, c))
    n = grid
    T2 = E.reshape(n * n, n)
    U = np.full((n * n, n * n), -np.inf)
    W = np.full((n * n, n * n), -np.inf)
    for k in range(n):
        col = T2[:, k]
        np.maximum(U, col[:, None] - col[None, :], out=U)
        np.maximum(W, col[:, None] + col[None, :], out=W)
    U4 = U.reshape(n, n, n, n)                  # [i, j, i', j']
    W4 = W.reshape(n, n, n, n).transpose(0, 3, 2, 1)  # -> [i, j, i', j']
    B4 = U4 + W4
    flat = int(np.argmax(B4))
    i, j, ip, jp = np.unravel_index(flat, B4.shape)
    kp = int(np.argmax(T2[i * n + j] - T2[ip * n + jp]))
    k = int(np.argmax(T2[i * n + jp] + T2[ip * n + j]))
    theta = np.array([th[i], th[j], th[k], th[ip], th[jp], th[kp]])
    evals = n**3 + 2 * n**3

    def corr(a: float, b: float, cth: float) -> float:
        return (math.cos(a) * math.cos(b) * math.cos(cth)
                - g1 * math.cos(a) * math.sin(b) * math.sin(cth)
                - g2 * math.sin(a) * math.cos(b) * math.sin(cth)
                - g3 * math.sin(a) * math.sin(b) * math.cos(cth))

    def bell(t: NDArray) -> float:
        return (corr(t[0], t[1], t[5]) + corr(t[0], t[4], t[2])
                + corr(t[3], t[1], t[2]) - corr(t[3], t[4], t[5]))

    best_v = bell(theta)
    step = 2.0 * np.pi / grid
    for _ in range(80):
        improved = 0.0
        for kk in range(6):
            def f1(u: float, kk=kk) -> float:
                t = theta.copy()
                t[kk] = u
                return bell(t)
            x, v, nn = _golden_max(f1, theta[kk] - step, theta[kk] + step, tol)
            evals += nn
            if v > best_v:
                improved = max(improved, v - best_v)
                best_v = v
                theta[kk] = x
        if improved < tol:
            break
    return ScanResult(arg_max=theta, max_value=best_v, evaluations=evals,
                      bracket=np.full(6, tol))


def log_j_maximize(f_of_j: Callable[[float], float], j_lo: float = 1e-8,
                   j_hi: float = 10.0, tol: float = 1e-8) -> ScanResult:
    """Maximize over the displacement magnitude on a logarithmic axis.

    The optima move across decades with energy, so the scan runs in log J.
    """
    res = maximize_scalar(lambda u: f_of_j(math.exp(u)),
                          math.log(j_lo), math.log(j_hi), tol)
    return ScanResult(arg_max=np.exp(res.arg_max), max_value=res.max_value,
                      evaluations=res.evaluations, bracket=res.bracket)


def asymptote_relations() -> list[dict]:
    """Numerically optimized displacements against their large-energy predictions.

    Each row reports the optimized J, the predicted value, and their ratio.
    """
    from . import bell_dp
    from .conditional import ConditionalParams

    rows: list[dict] = []

    n = 1e3
    res = log_j_maximize(lambda j: bell_dp.b3_ghz_closed(
        math.asinh(math.sqrt(n / 3.0)), j).value, 1e-8, 1.0)
    pred = math.asinh(math.sqrt(n / 3.0)) / (8.0 * n)
    rows.append({
        "name": "ghz_dp_j", "energy": n, "j_opt": float(res.arg_max[0]),
        "j_predicted": pred, "ratio": float(res.arg_max[0]) / pred,
        "bell_value": res.max_value,
    })

    n = 1e5
    res = log_j_maximize(lambda j: bell_dp.b3_su21_opt_dp(n, j).value, 1e-8, 1.0)
    pred = 3.21 / n
    rows.append({
        "name": "su21_opt_dp_jn", "energy": n, "j_opt": float(res.arg_max[0]),
        "j_predicted": pred, "ratio": float(res.arg_max[0]) / pred,
        "bell_value": res.max_value,
    })

    r = 5.0
    n = 2.0 * math.sinh(r) ** 2
    res = log_j_maximize(lambda j: bell_dp.b2_twb_dp(n, j).value, 1e-10, 1.0)
    pred = math.log(3.0) / 32.0 * math.exp(-2.0 * r)
    rows.append({
        "name": "twb_dp_exp2r_j", "energy": n, "j_opt": float(res.arg_max[0]),
        "j_predicted": pred, "ratio": float(res.arg_max[0]) / pred,
        "bell_value": res.max_value,
    })

    n2 = 1e3
    p = ConditionalParams(n2=n2, n3=1e-2 / n2, eta=1.0)
    res = log_j_maximize(lambda j: bell_dp.b2_conditional_dp(p, j).value, 1e-9, 1.0)
    pred = 0.042 / n2
    rows.append({
        "name": "conditional_dp_jn2", "energy": n2, "j_opt": float(res.arg_max[0]),
        "j_predicted": pred, "ratio": float(res.arg_max[0]) / pred,
        "bell_value": res.max_value,
    })
    return rows
