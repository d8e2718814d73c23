"""Constructive refutation of convexity of ``phi_p`` for ``p > 2``.

The recipe: find PSD ``A1, A2`` and a unit vector ``v`` on which ``x**p``
fails operator convexity, put ``B = P_v + lam (I - P_v)`` and compare
``phi_p`` at the midpoint ``(t (A1+A2)/2, B)`` against the average over
``(t A1, B)`` and ``(t A2, B)``.  For small ``t`` the midpoint excess is
``(t**p / p) Tr(B**(1-p) D)`` with ``D = ((A1+A2)/2)**p - (A1**p + A2**p)/2``,
and ``Tr(B**(1-p) D) = <v, D v> + O(lam**(1-p))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath
import numpy as np

from ..functionals import phi_p
from ..matcore import (
    EPS_PSD,
    SingularMatrixError,
    eig_hermitian,
    hermitian,
    mat_power,
    psd,
    psd_spectrum,
    random_psd,
)

LAMBDA_GRID = tuple(10.0**k for k in range(1, 7))
T_GRID = tuple(10.0**-k for k in range(1, 5))
MARGIN_MIN = 1e-8
TOL_GAP = 1e-10


class SearchFailure(RuntimeError):
    def __init__(self, message, best_gap):
        super().__init__(f"{message}; best gap found {best_gap:.3e}")
        self.best_gap = best_gap


class ConstructionFailure(RuntimeError):
    def __init__(self, message, table):
        super().__init__(message)
        self.table = table


@dataclass
class OperatorConvexityWitness:
    A1: np.ndarray
    A2: np.ndarray
    v: np.ndarray
    gap: float
    attempts: int


@dataclass
class ConvexityWitness:
    A1: np.ndarray
    A2: np.ndarray
    B: np.ndarray
    v: np.ndarray
    lam: float
    t: float
    margin: float
    p: float
    operator_gap: float
    limit_value: float
    attempts: int = 0
    table: list = field(default_factory=list)

    def matrices(self) -> dict:
        return {
            "A1": self.A1,
            "A2": self.A2,
            "B": self.B,
            "v": self.v,
            "lambda": self.lam,
            "t": self.t,
            "margin": self.margin,
            "p": self.p,
            "operator_gap": self.operator_gap,
            "limit_value": self.limit_value,
        }


def operator_convexity_gap_matrix(A1, A2, p: float) -> np.ndarray:
    """``((A1+A2)/2)**p - (A1**p + A2**p)/2``; a positive eigenvalue means ``x**p``
    is not operator convex on this pair."""
    return hermitian(mat_power((A1 + A2) / 2, p) - (mat_power(A1, p) + mat_power(A2, p)) / 2)


def operator_convexity_witness(
    p: float,
    dim: int,
    seed: int,
    max_attempts: int = 10_000,
    tol_gap: float = TOL_GAP,
    good_gap: float = 0.05,
) -> OperatorConvexityWitness:
    """Random search for ``A1, A2, v`` with
    ``<v, ((A1+A2)/2)**p v> - <v, ((A1**p + A2**p)/2) v> > tol_gap``.

    For each random pair the best ``v`` is the top eigenvector of the gap
    matrix.  The search keeps the best pair and stops early once the gap
    exceeds ``good_gap``.
    """
    if dim < 2:
        raise ValueError("operator convexity can only fail in dimension >= 2")
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(1, max_attempts + 1):
        A1 = random_psd(dim, 1.0, rng)
        A2 = random_psd(dim, 1.0, rng)
        spec = eig_hermitian(operator_convexity_gap_matrix(A1, A2, p))
        gap = float(spec.eigenvalues[-1])
        if best is None or gap > best.gap:
            v = spec.eigenvectors[:, -1]
            best = OperatorConvexityWitness(A1, A2, v / np.linalg.norm(v), gap, attempt)
        if best.gap > good_gap:
            break
    if best.gap <= tol_gap:
        raise SearchFailure(f"no operator-convexity violation for p={p} in {max_attempts} attempts", best.gap)
    return best


def midpoint_excess(A1, A2, B, t: float, p: float) -> float:
    """``phi_p(t(A1+A2)/2, B) - phi_p(t A1, B)/2 - phi_p(t A2, B)/2``."""
    mid = phi_p([t * (A1 + A2) / 2, B], p)
    return mid - 0.5 * phi_p([t * A1, B], p) - 0.5 * phi_p([t * A2, B], p)


def limit_value(A1, A2, B, p: float) -> float:
    """``Tr(B**(1-p) D)``, the ``t -> 0`` limit of ``p t**-p * midpoint_excess``."""
    D = operator_convexity_gap_matrix(A1, A2, p)
    return float(np.trace(mat_power(B, 1 - p) @ D).real)


def noise_floor(B, p: float) -> float:
    """Round-off scale of ``midpoint_excess``.

    The eigensolver resolves the spectrum of ``B**p + ...`` only to
    ``eps * ||B||**p`` absolutely; taking the ``1/p`` root near the smallest
    eigenvalue ``b`` of ``B`` scales that by ``b**(1-p) / p``.  A factor 10
    covers the three ``phi_p`` evaluations.
    """
    lam = psd_spectrum(B).eigenvalues
    return 10 * np.finfo(float).eps * lam[-1] ** p * lam[0] ** (1 - p) / p


def counterexample_p_gt_2(
    p: float,
    dim: int = 2,
    seed: int = 0,
    lambdas: Sequence[float] = LAMBDA_GRID,
    ts: Sequence[float] = T_GRID,
    max_attempts: int = 10_000,
    margin_min: float = MARGIN_MIN,
) -> ConvexityWitness:
    """Build tuples on which midpoint convexity of ``phi_p`` fails, ``p > 2``.

    Scans ``lam`` and ``t`` over the grids, keeps entries whose excess clears
    both ``margin_min`` and :func:`noise_floor`, and returns the one with the
    largest excess.
    """
    if p <= 2:
        raise ValueError(f"the convexity counterexample needs p > 2, got {p}")
    w = operator_convexity_witness(p, dim, seed, max_attempts)
    P = np.outer(w.v, w.v.conj())
    I = np.eye(dim)
    table = []
    best = None
    for lam in lambdas:
        B = hermitian(P + lam * (I - P))
        floor = noise_floor(B, p)
        for t in ts:
            m = midpoint_excess(w.A1, w.A2, B, t, p)
            ok = m > max(margin_min, floor)
            table.append({"lambda": lam, "t": t, "margin": m, "noise_floor": floor, "certified": bool(ok)})
            if ok and (best is None or m > best[2]):
                best = (lam, t, m, B)
    if best is None:
        raise ConstructionFailure(f"no certified convexity failure for p={p} on the grid", table)
    lam, t, m, B = best
    return ConvexityWitness(
        A1=w.A1,
        A2=w.A2,
        B=B,
        v=w.v,
        lam=lam,
        t=t,
        margin=m,
        p=p,
        operator_gap=w.gap,
        limit_value=limit_value(w.A1, w.A2, B, p),
        attempts=w.attempts,
        table=table,
    )


# --- small-t expansion ----------------------------------------------------------------------


@dataclass
class ExpansionReport:
    ts: list
    residuals: list
    exponent: float
    p: float

    @property
    def expected_exponent(self) -> float:
        return 2 * self.p


def _mp_matrix(X) -> mpmath.matrix:
    X = np.asarray(X, dtype=complex)
    n = X.shape[0]
    M = mpmath.matrix(n, n)
    for i in range(n):
        for j in range(n):
            M[i, j] = mpmath.mpc(float(X[i, j].real), float(X[i, j].imag))
    return M


def _mp_hermitian(M):
    return (M + M.H) / 2


def _mp_fn(M, f):
    E, Q = mpmath.eigh(_mp_hermitian(M))
    n = M.rows
    D = mpmath.diag([f(mpmath.re(E[i])) for i in range(n)])
    return Q * D * Q.H


def _mp_trace_fn(M, f):
    E, _ = mpmath.eigh(_mp_hermitian(M))
    return mpmath.fsum(f(mpmath.re(E[i])) for i in range(M.rows))


def _mp_pow(p):
    return lambda x: mpmath.power(x, p) if x > 0 else mpmath.mpf(0)


def fit_exponent(ts: Sequence[float], values: Sequence[float]) -> float:
    """Least-squares slope of ``log|value|`` against ``log t``."""
    x = np.log(np.asarray(ts, dtype=float))
    y = np.log(np.abs(np.asarray(values, dtype=float)))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def small_t_expansion(A, B, p: float, t_grid: Sequence[float] = (1e-1, 1e-2, 1e-3), dps: int = 80) -> ExpansionReport:
    """Remainder of the first-order expansion of ``phi_p(tA, B)`` in ``t**p``.

    ``r(t) = phi_p(tA, B) - Tr B - (t**p / p) Tr(B**(1-p) A**p)`` should scale as
    ``t**(2p)``.  The remainder falls far below double precision for small
    ``t``, so it is evaluated with ``mpmath`` at ``dps`` decimal digits,
    treating the double-precision inputs as exact.
    """
    if p <= 1:
        raise ValueError(f"expansion is stated for p > 1, got {p}")
    A = psd(A)
    lamB = psd_spectrum(B).eigenvalues
    if lamB[0] <= EPS_PSD * max(lamB[-1], 1.0):
        raise SingularMatrixError(f"B must be invertible (smallest eigenvalue {lamB[0]:.3e})")
    with mpmath.workdps(dps):
        mp_p = mpmath.mpf(p)
        Am, Bm = _mp_matrix(A), _mp_matrix(B)
        Ap = _mp_fn(Am, _mp_pow(mp_p))
        Bp = _mp_fn(Bm, _mp_pow(mp_p))
        B1p = _mp_fn(Bm, _mp_pow(1 - mp_p))
        trB = mpmath.re(sum(Bm[i, i] for i in range(Bm.rows)))
        first = mpmath.re(sum((B1p * Ap)[i, i] for i in range(Am.rows)))
        residuals = []
        for t in t_grid:
            tp = mpmath.power(mpmath.mpf(t), mp_p)
            phi = _mp_trace_fn(tp * Ap + Bp, _mp_pow(1 / mp_p))
            residuals.append(phi - trB - tp / mp_p * first)
        # below working precision the remainder is indistinguishable from 0
        floor = mpmath.power(10, 10 - dps) * max(abs(trB), 1)
        res = [0.0 if abs(r) < floor else float(r) for r in residuals]
    if all(r == 0.0 for r in res):
        exponent = math.inf
    else:
        exponent = fit_exponent(t_grid, res)
    return ExpansionReport(list(t_grid), res, exponent, p)
