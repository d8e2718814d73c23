"""Commutative special case: nonnegative arrays ``f[x, y, z]`` in place of operators.

Sums replace integrals.  ``minkowski_lhs``/``minkowski_rhs`` are the two
sides of the three-variable integral Minkowski inequality

    sum_z (sum_x (sum_y f)**p)**(1/p)  <=  sum_z sum_y (sum_x f**p)**(1/p)     (p >= 1)

and ``entropy_combination`` is ``S(f_13) + S(f_23) - S(f_123) - S(f_3)`` for
the normalised array.  Embedding ``f`` on the diagonal reproduces these
numbers through the matrix functionals; see :func:`minkowski_embedding` and
:func:`ssa_embedding` for the factor orders that make this work.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class ClassicalResult(NamedTuple):
    minkowski_lhs: float
    minkowski_rhs: float
    entropy_combination: float


def shannon(q) -> float:
    q = np.asarray(q, dtype=float).ravel()
    q = q[q > 0]
    return float(-np.sum(q * np.log(q)))


def classical_oracle(f, p: float) -> ClassicalResult:
    f = np.asarray(f, dtype=float)
    if f.ndim != 3:
        raise ValueError("f must be a three-way array f[x, y, z]")
    if np.any(f < 0):
        raise ValueError("f must be entrywise nonnegative")
    if p <= 0:
        raise ValueError("p must be positive")
    lhs = np.sum(np.sum(np.sum(f, axis=1) ** p, axis=0) ** (1 / p))
    rhs = np.sum(np.sum(f**p, axis=0) ** (1 / p))
    g = f / f.sum()
    ent = shannon(g.sum(axis=1)) + shannon(g.sum(axis=0)) - shannon(g) - shannon(g.sum(axis=(0, 1)))
    return ClassicalResult(float(lhs), float(rhs), ent)


def minkowski_embedding(f) -> tuple[np.ndarray, tuple[int, int, int]]:
    """Diagonal operator on dims ``(|Y|, |X|, |Z|)`` whose three-space Minkowski
    sides equal the classical ones (the operator inequality traces its first
    factor in the inner sum)."""
    g = np.transpose(np.asarray(f, dtype=float), (1, 0, 2))
    return np.diag(g.ravel()).astype(complex), g.shape


def ssa_embedding(f) -> tuple[np.ndarray, tuple[int, int, int]]:
    """Diagonal density on dims ``(|X|, |Y|, |Z|)``."""
    g = np.asarray(f, dtype=float)
    g = g / g.sum()
    return np.diag(g.ravel()).astype(complex), g.shape
