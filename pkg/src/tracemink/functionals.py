"""Scalar trace functionals on positive matrices.

``phi_p`` is ``Tr((sum_j A_j**p)**(1/p))``; ``psi_p`` is its two-factor
cousin ``Tr_1((Tr_2 A**p)**(1/p))``.  The ``*_sides`` functions return the
two sides of the Minkowski-type and Birman-Koplienko-Solomyak inequalities
so that callers decide how to compare them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from .matcore import (
    DomainError,
    ShapeError,
    density,
    eig_hermitian,
    mat_power,
    positive_part,
    psd,
    psd_spectrum,
    trace_power,
)
from .tensor import SpaceLike, as_space, partial_trace

ENTROPY_CUTOFF = 1e-15

REGIMES = ("concave", "boundary", "conjecture", "convex_known", "failure")


@dataclass(frozen=True)
class PExponent:
    """An exponent ``p > 0`` tagged with the regime it falls in.

    ``concave``: 0<p<1, ``boundary``: p=1, ``conjecture``: 1<p<2,
    ``convex_known``: p=2, ``failure``: p>2.
    """

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not (p > 0 and math.isfinite(p)):
            raise ValueError(f"exponent must be a finite positive number, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def regime(self) -> str:
        p = self.p
        if p < 1:
            return "concave"
        if p == 1:
            return "boundary"
        if p < 2:
            return "conjecture"
        if p == 2:
            return "convex_known"
        return "failure"

    @property
    def conjugate(self) -> float | None:
        """Hoelder conjugate ``q = p/(p-1)``; ``None`` unless ``p > 1``."""
        return self.p / (self.p - 1) if self.p > 1 else None

    def __float__(self):
        return self.p


ExponentLike = Union[PExponent, float]


def _p(p: ExponentLike) -> float:
    return PExponent(float(p)).p


def _trace(X) -> float:
    return float(np.trace(X).real)


class Sides(NamedTuple):
    lhs: float
    rhs: float


# --- Phi_p, Psi_p ---------------------------------------------------------------------------


def phi_p(As: Sequence, p: ExponentLike) -> float:
    """``Tr((A_1**p + ... + A_n**p)**(1/p))`` for PSD ``A_j`` of equal size."""
    p = _p(p)
    As = list(As)
    if not As:
        raise ValueError("phi_p needs at least one matrix")
    shape = np.shape(As[0])
    if any(np.shape(A) != shape for A in As):
        raise ShapeError(f"phi_p arguments differ in shape: {[np.shape(A) for A in As]}")
    S = sum(mat_power(A, p) for A in As)
    return trace_power(S, 1.0 / p)


def psi_p(A, dims: SpaceLike, p: ExponentLike, traced: int = 1) -> float:
    """``Tr((Tr_f A**p)**(1/p))`` where ``f = traced`` (default: the second factor)."""
    p = _p(p)
    space = as_space(dims)
    if len(space) != 2:
        raise ShapeError("psi_p is defined on two-factor spaces")
    A = space.check(A)
    inner = partial_trace(mat_power(A, p), space, traced)
    return trace_power(inner, 1.0 / p)


# --- entropy --------------------------------------------------------------------------------


def entropy(rho) -> float:
    """von Neumann entropy ``-Tr(rho ln rho)`` in nats, with ``0 ln 0 = 0``.

    ``rho`` must have unit trace (within 1e-12); use :func:`density` first
    when it does not.
    """
    rho = psd(rho)
    if abs(_trace(rho) - 1.0) > 1e-12:
        raise DomainError(f"density matrix must have unit trace, got {_trace(rho)!r}")
    lam = psd_spectrum(rho).eigenvalues
    lam = lam[lam > ENTROPY_CUTOFF]
    return float(-np.sum(lam * np.log(lam)))


def marginal(A, dims: SpaceLike, keep: Sequence[int]) -> np.ndarray:
    """Reduced operator on the factors in ``keep`` (0-based)."""
    space = as_space(dims)
    drop = [i for i in range(len(space)) if i not in keep]
    return partial_trace(A, space, drop) if drop else space.check(A)


def ssa_deficit(A, dims: SpaceLike) -> float:
    """``S(A_13) + S(A_23) - S(A_123) - S(A_3)`` on a three-factor space.

    Strong subadditivity says this is nonnegative.  Marginals are labelled by
    the factors they keep, 1-based as in ``A_13 = Tr_2 A``.
    """
    space = as_space(dims)
    if len(space) != 3:
        raise ShapeError("ssa_deficit needs a three-factor space")
    A = density(space.check(A))
    return (
        entropy(marginal(A, space, [0, 2]))
        + entropy(marginal(A, space, [1, 2]))
        - entropy(A)
        - entropy(marginal(A, space, [2]))
    )


# --- Minkowski-type sides -------------------------------------------------------------------


def minkowski2_sides(A, dims: SpaceLike, p: ExponentLike) -> Sides:
    """``lhs = (Tr_2 (Tr_1 A)**p)**(1/p)``, ``rhs = Tr_1((Tr_2 A**p)**(1/p))``.

    For ``p >= 1`` one expects ``lhs <= rhs``; the order reverses for ``p <= 1``.
    """
    p = _p(p)
    space = as_space(dims)
    if len(space) != 2:
        raise ShapeError("minkowski2_sides needs a two-factor space")
    A = psd(space.check(A))
    lhs = trace_power(partial_trace(A, space, 0), p) ** (1.0 / p)
    rhs = psi_p(A, space, p)
    return Sides(lhs, rhs)


def minkowski3_sides(A, dims: SpaceLike, p: ExponentLike) -> Sides:
    """``lhs = Tr_3 (Tr_2 (Tr_1 A)**p)**(1/p)``, ``rhs = Tr_13((Tr_2 A**p)**(1/p))``."""
    p = _p(p)
    space = as_space(dims)
    if len(space) != 3:
        raise ShapeError("minkowski3_sides needs a three-factor space")
    A = psd(space.check(A))
    d1, d2, d3 = space.dims
    A23 = partial_trace(A, space, 0)
    inner = partial_trace(mat_power(A23, p), (d2, d3), 0)
    lhs = trace_power(inner, 1.0 / p)
    A13 = partial_trace(mat_power(A, p), space, 1)
    rhs = trace_power(A13, 1.0 / p)
    return Sides(lhs, rhs)


# --- BKS ------------------------------------------------------------------------------------


def _bks_exponent(p) -> float:
    p = _p(p)
    if p <= 1:
        raise ValueError(f"BKS quantities need p > 1, got {p}")
    return p


def bks_sides(A, B, p: float) -> Sides:
    """``lhs = Tr((B**p - A**p)_+)**(1/p)``, ``rhs = Tr(B - A)_+``; expect ``lhs >= rhs``."""
    p = _bks_exponent(p)
    A, B = psd(A), psd(B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    Ap, Bp = mat_power(A, p), mat_power(B, p)
    # the spectrum of a difference is only known to round-off of its terms
    lam = eig_hermitian(Bp - Ap).eigenvalues
    floor = 64 * np.finfo(float).eps * max(np.linalg.norm(Ap, 2), np.linalg.norm(Bp, 2))
    lhs = float(np.sum(np.where(lam > floor, lam, 0.0) ** (1.0 / p)))
    rhs = _trace(positive_part(B - A))
    return Sides(lhs, rhs)


def bks_subadditivity_sides(A, C, p: float) -> Sides:
    """``lhs = Tr(A + C)``, ``rhs = Tr(A**p + C**p)**(1/p)``; expect ``lhs >= rhs``."""
    p = _bks_exponent(p)
    A, C = psd(A), psd(C)
    if A.shape != C.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {C.shape}")
    return Sides(_trace(A + C), phi_p([A, C], p))
