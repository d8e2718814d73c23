"""Tensor-product structure: Kronecker products, partial traces, embeddings,
and averaging over the signed-permutation group.

Index convention: factor 0 is the slow (leftmost) Kronecker index, so an
operator on ``H_0 (x) H_1`` with dims ``[d0, d1]`` has matrix entry
``A[i0*d1 + i1, j0*d1 + j1]``.  Factors are numbered from 0 in code; the
operator usually written ``Tr_1 A`` is ``partial_trace(A, dims, 0)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .matcore import ShapeError, hermitian

N_MAX = 4


class CapacityError(ValueError):
    """Signed-permutation group too large to enumerate."""


@dataclass(frozen=True)
class TensorSpace:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not 1 <= len(dims) <= 3:
            raise ShapeError(f"between 1 and 3 tensor factors supported, got {len(dims)}")
        if any(d < 1 for d in dims):
            raise ShapeError(f"factor dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    def __len__(self):
        return len(self.dims)

    def check(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=complex)
        if A.shape != (self.total, self.total):
            raise ShapeError(f"matrix of shape {A.shape} does not live on a space with dims {list(self.dims)}")
        return A

    def to_json(self) -> dict:
        return {"dims": list(self.dims)}

    @classmethod
    def from_json(cls, obj: dict) -> "TensorSpace":
        return cls(tuple(obj["dims"]))


SpaceLike = Union[TensorSpace, Sequence[int]]


def as_space(dims: SpaceLike) -> TensorSpace:
    return dims if isinstance(dims, TensorSpace) else TensorSpace(tuple(dims))


def _factors(space: TensorSpace, factor) -> list[int]:
    fs = [factor] if np.isscalar(factor) else list(factor)
    out = []
    for f in fs:
        f = int(f)
        if not 0 <= f < len(space):
            raise ShapeError(f"factor {f} out of range for dims {list(space.dims)}")
        out.append(f)
    if len(set(out)) != len(out):
        raise ShapeError(f"repeated factor in {fs}")
    return out


def kron(*mats) -> np.ndarray:
    """Kronecker product, first argument slowest."""
    if not mats:
        raise ValueError("kron needs at least one matrix")
    return reduce(np.kron, (np.asarray(m) for m in mats))


def partial_trace(A, dims: SpaceLike, factor: Union[int, Iterable[int]]) -> np.ndarray:
    """Trace out one factor (or several) of an operator on a tensor product.

    The result acts on the remaining factors in their original order.
    Tracing every factor gives a 1x1 matrix holding ``Tr A``.
    """
    space = as_space(dims)
    A = space.check(A)
    traced = _factors(space, factor)
    k = len(space)
    T = A.reshape(space.dims + space.dims)
    # contract in descending order so lower axis numbers stay valid
    for f in sorted(traced, reverse=True):
        m = T.ndim // 2
        T = np.trace(T, axis1=f, axis2=f + m)
    keep = [space.dims[i] for i in range(k) if i not in traced]
    d = int(np.prod(keep)) if keep else 1
    return T.reshape(d, d)


def remaining_dims(dims: SpaceLike, factor) -> tuple[int, ...]:
    space = as_space(dims)
    traced = _factors(space, factor)
    return tuple(d for i, d in enumerate(space.dims) if i not in traced)


def embed_factor(B, dims: SpaceLike, factor: int) -> np.ndarray:
    """``I (x) ... (x) B (x) ... (x) I`` with ``B`` on the given factor."""
    space = as_space(dims)
    (f,) = _factors(space, factor)
    B = np.asarray(B)
    d = space.dims[f]
    if B.shape != (d, d):
        raise ShapeError(f"operator of shape {B.shape} cannot act on factor {f} of dimension {d}")
    parts = [np.eye(di) if i != f else B for i, di in enumerate(space.dims)]
    return kron(*parts)


# --- signed permutations --------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """Unitary ``W e_j = (-1)**signs[j] e_{perm[j]}`` (0-based indices)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    def matrix(self) -> np.ndarray:
        W = np.zeros((self.n, self.n), dtype=np.int64)
        for j, (i, s) in enumerate(zip(self.perm, self.signs)):
            W[i, j] = -1 if s else 1
        return W


def signed_permutation_group(N: int, n_max: int = N_MAX) -> list[SignedPermutation]:
    """All ``2**N * N!`` signed permutations of ``N`` basis vectors."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > n_max:
        raise CapacityError(f"signed-permutation group of degree {N} exceeds the cap N_max={n_max}")
    return [
        SignedPermutation(perm, signs)
        for perm in itertools.permutations(range(N))
        for signs in itertools.product((0, 1), repeat=N)
    ]


def group_average(A, dims: SpaceLike, averaged_factor: int = 1, n_max: int = N_MAX) -> np.ndarray:
    """Average ``(I (x) W*) A (I (x) W)`` over the signed-permutation group
    acting on ``averaged_factor`` of a two-factor space.

    The average is exactly ``(1/N) Tr_f(A)`` re-embedded with an identity on
    the averaged factor, e.g. ``kron(partial_trace(A, dims, 1), I_N) / N`` when
    the second factor is averaged.
    """
    space = as_space(dims)
    A = space.check(A)
    if len(space) != 2:
        raise ShapeError("group averaging is defined on two-factor spaces")
    (f,) = _factors(space, averaged_factor)
    group = signed_permutation_group(space.dims[f], n_max)
    acc = np.zeros_like(A)
    for w in group:
        W = embed_factor(w.matrix().astype(complex), space, f)
        acc += W.conj().T @ A @ W
    return hermitian(acc / len(group))
