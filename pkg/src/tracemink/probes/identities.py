"""Exact identities used along the way; each check returns a residual."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..functionals import phi_p, psi_p
from ..matcore import DomainError, eig_hermitian, hermitian, mat_power, psd, trace_power, trace_norm
from ..tensor import as_space, embed_factor, group_average, kron, partial_trace


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def block_diag(*blocks) -> np.ndarray:
    """Block-diagonal matrix; block index is the slow Kronecker factor."""
    d = np.shape(blocks[0])[0]
    out = np.zeros((len(blocks) * d, len(blocks) * d), dtype=complex)
    for j, X in enumerate(blocks):
        out[j * d : (j + 1) * d, j * d : (j + 1) * d] = X
    return out


def swap_operator(d: int) -> np.ndarray:
    """``[[0, I], [I, 0]]`` exchanging the two diagonal blocks."""
    I = np.eye(d)
    Z = np.zeros((d, d))
    return np.block([[Z, I], [I, Z]])


def compressed_trace_power(Pi, X, r: float) -> float:
    """``Tr((Pi X Pi)**r)`` with the power taken on ``range(Pi)`` only."""
    spec = eig_hermitian(Pi)
    V = spec.eigenvectors[:, spec.eigenvalues > 0.5]
    return trace_power(V.conj().T @ X @ V, r)


def block_identity_sides(A1, A2, p: float) -> tuple[float, float]:
    A1, A2 = psd(A1), psd(A2)
    d = A1.shape[0]
    Ap = mat_power(block_diag(A1, A2), p)
    sigma = swap_operator(d)
    I = np.eye(2 * d)
    plus, minus = (I + sigma) / 2, (I - sigma) / 2
    rhs = 2 ** (1 / p) * (compressed_trace_power(plus, Ap, 1 / p) + compressed_trace_power(minus, Ap, 1 / p))
    lhs = 2 * phi_p([A1, A2], p)
    return lhs, rhs


def verify_block_identity(A1, A2, p: float) -> float:
    """Relative residual of the swap-projector rewriting of ``2 phi_p(A1, A2)``.

    Holds for every ``p > 0``; it is the ingredient of the concavity proof for
    ``0 < p < 1``.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    return _rel(*block_identity_sides(A1, A2, p))


def column_stack_operator(As: Sequence) -> np.ndarray:
    """Square block matrix with ``A_1..A_n`` down the first block column, zeros elsewhere."""
    As = [np.asarray(A, dtype=complex) for A in As]
    n, d = len(As), As[0].shape[0]
    out = np.zeros((n * d, n * d), dtype=complex)
    out[:, :d] = np.vstack(As)
    return out


def verify_sahi(As: Sequence) -> float:
    """Relative residual of ``phi_2(A_1..A_n) = Tr|column stack|`` (trace norm via SVD)."""
    return _rel(phi_p(As, 2.0), trace_norm(column_stack_operator(As)))


@dataclass
class DualWitness:
    B: np.ndarray
    attained: float
    lhs: float
    q: float

    @property
    def residual(self) -> float:
        return _rel(self.attained, self.lhs)


def dual_witness_minkowski2(A, dims, p: float) -> DualWitness:
    """Hoelder-extremal ``B`` for ``(Tr_2 (Tr_1 A)**p)**(1/p)``.

    ``B = c M**(p-1)`` with ``M = Tr_1 A`` and ``c`` normalising ``Tr B**q = 1``.
    ``attained`` is computed independently as ``Tr((I (x) B) A)``.
    """
    if p <= 1:
        raise ValueError(f"duality step needs p > 1, got {p}")
    space = as_space(dims)
    A = psd(space.check(A))
    q = p / (p - 1)
    M = partial_trace(A, space, 0)
    norm_p = trace_power(M, p)
    if norm_p <= 0:
        raise DomainError("Tr_1 A vanishes; no dual witness")
    B = mat_power(M, p - 1) * norm_p ** (-1 / q)
    attained = float(np.trace(embed_factor(B, space, 1) @ A).real)
    return DualWitness(B, attained, norm_p ** (1 / p), q)


@dataclass
class MpmReport:
    spectrum_residual: float
    trace_residual: float
    concavity_slack: float
    average_residual: float


def mpm_matrices(A, C, p: float) -> tuple[np.ndarray, np.ndarray]:
    Ah, Ch = mat_power(A, p / 2), mat_power(C, p / 2)
    Z = np.zeros_like(Ah)
    return np.block([[Ah, Z], [Ch, Z]]), np.block([[Ah, Z], [-Ch, Z]])


def verify_mpm_spectra(A, C, p: float) -> MpmReport:
    """Checks on ``M_pm = [[A**(p/2), 0], [+-C**(p/2), 0]]``.

    * ``spectrum_residual``: ``M* M`` and ``M M*`` have equal spectra (relative, worst sign).
    * ``trace_residual``: ``Tr (M* M)**(1/p)`` and ``Tr (M M*)**(1/p)`` equal ``phi_p(A, C)``.
    * ``average_residual``: ``Tr(((M+ M+* + M- M-*)/2)**(1/p))`` equals ``Tr(A + C)``.
    * ``concavity_slack``: ``Tr(A + C) - phi_p(A, C)``, nonnegative for ``p > 1``.
    """
    if p <= 1:
        raise ValueError(f"p must exceed 1, got {p}")
    A, C = psd(A), psd(C)
    target = phi_p([A, C], p)
    spec_res, tr_res = 0.0, 0.0
    outer = []
    for M in mpm_matrices(A, C, p):
        MsM = hermitian(M.conj().T @ M)
        MMs = hermitian(M @ M.conj().T)
        e1 = eig_hermitian(MsM).eigenvalues
        e2 = eig_hermitian(MMs).eigenvalues
        scale = max(np.max(np.abs(e1)), 1e-300)
        spec_res = max(spec_res, float(np.max(np.abs(e1 - e2)) / scale))
        tr_res = max(tr_res, _rel(_floored_trace_power(MsM, 1 / p), target), _rel(_floored_trace_power(MMs, 1 / p), target))
        outer.append(MMs)
    avg = _floored_trace_power((outer[0] + outer[1]) / 2, 1 / p)
    trAC = float(np.trace(A + C).real)
    return MpmReport(spec_res, tr_res, trAC - target, _rel(avg, trAC))


def _floored_trace_power(H, q: float) -> float:
    # M* M and M M* have rank at most d on a 2d space; round-off eigenvalues of
    # size eps * |H| would contribute (eps |H|)**q, far above eps for q < 1.
    lam = eig_hermitian(H).eigenvalues
    floor = 64 * np.finfo(float).eps * max(float(np.max(np.abs(lam))), 1e-300)
    lam = np.where(lam > floor, lam, 0.0)
    return float(np.sum(lam**q))


def block_diag_reduction(As: Sequence, p: float) -> float:
    """Relative residual of ``psi_p(block_diag(A_1..A_n)) = phi_p(A_1..A_n)``.

    The block-diagonal operator lives on dims ``[n, d]`` with the block index
    slow, so the partial trace inside ``psi_p`` runs over the block factor
    (factor 0).
    """
    As = [psd(A) for A in As]
    n, d = len(As), As[0].shape[0]
    return _rel(psi_p(block_diag(*As), (n, d), p, traced=0), phi_p(As, p))


def group_average_residual(A, dims, averaged_factor: int = 1) -> float:
    """Frobenius distance between the group average and ``(1/N) Tr_f(A)`` re-embedded."""
    space = as_space(dims)
    A = space.check(A)
    N = space.dims[averaged_factor]
    reduced = partial_trace(A, space, averaged_factor)
    if averaged_factor == 1:
        expected = kron(reduced, np.eye(N)) / N
    else:
        expected = kron(np.eye(N), reduced) / N
    return float(np.linalg.norm(group_average(A, space, averaged_factor) - expected))
