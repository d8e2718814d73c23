"""Recovering strong subadditivity from the three-space inequality at p = 1.

Write ``gap(p) = rhs(p) - lhs(p)`` for the two sides of the three-space
Minkowski trace inequality.  ``gap(1) = 0`` and ``gap(p) <= 0`` for
``p < 1``, so the left difference quotient at 1 is nonnegative.  For a
density matrix its limit is exactly the SSA deficit: differentiating
``Tr X(p)**(1/p)`` at p = 1 gives ``S(X(1)) + Tr X'(1)``, which yields
``S(A_13) - S(A_123)`` for the right side and ``S(A_3) - S(A_23)`` for the
left.  The proportionality constant is therefore 1; the tests measure it.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from ..functionals import minkowski3_sides, ssa_deficit
from ..matcore import density
from ..tensor import as_space

DEFAULT_STEPS = (1e-2, 1e-3, 1e-4)


class LimitPoint(NamedTuple):
    fd_derivative: float
    ssa_deficit: float
    discrepancy: float


class LimitStudy(NamedTuple):
    steps: tuple
    fd: tuple
    richardson: tuple
    ssa_deficit: float


def minkowski3_gap(A, dims, p: float) -> float:
    lhs, rhs = minkowski3_sides(A, dims, p)
    return rhs - lhs


def left_difference(A, dims, h: float) -> float:
    return (minkowski3_gap(A, dims, 1.0) - minkowski3_gap(A, dims, 1.0 - h)) / h


def ssa_from_limit(A, dims, h: float) -> LimitPoint:
    """Left difference quotient of the three-space gap at p = 1 next to the SSA deficit."""
    if not 0 < h <= 0.1:
        raise ValueError(f"step h must lie in (0, 0.1], got {h}")
    space = as_space(dims)
    rho = density(space.check(A))
    fd = left_difference(rho, space, h)
    deficit = ssa_deficit(rho, space)
    return LimitPoint(fd, deficit, fd - deficit)


def richardson(steps: Sequence[float], values: Sequence[float]) -> tuple:
    """First-order Richardson extrapolation on consecutive pairs (error linear in h)."""
    out = []
    for (h1, f1), (h2, f2) in zip(zip(steps, values), zip(steps[1:], values[1:])):
        out.append((h1 * f2 - h2 * f1) / (h1 - h2))
    return tuple(out)


def ssa_limit_study(A, dims, steps: Sequence[float] = DEFAULT_STEPS) -> LimitStudy:
    space = as_space(dims)
    rho = density(space.check(A))
    fd = tuple(left_difference(rho, space, h) for h in steps)
    return LimitStudy(tuple(steps), fd, richardson(steps, fd), ssa_deficit(rho, space))
