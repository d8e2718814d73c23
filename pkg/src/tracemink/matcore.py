"""Hermitian spectral core.

Every trace functional in the package is built from the eigendecomposition of
a Hermitian matrix and the functional calculus ``f(H) = U diag(f(lam)) U*``.
Matrices are plain complex ``numpy`` arrays; the helpers ``hermitian`` and
``psd`` validate and normalise them.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

EPS_PSD = 1e-10
EPS_EIG = 1e-10

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class MatrixError(ValueError):
    """Base class for invalid matrix input."""


class ShapeError(MatrixError):
    pass


class NotHermitianError(MatrixError):
    pass


class NotPSDError(MatrixError):
    pass


class DomainError(MatrixError):
    """A scalar function is undefined at some eigenvalue."""


class SingularMatrixError(DomainError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def _square(X) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] < 1:
        raise ShapeError(f"expected a non-empty square matrix, got shape {X.shape}")
    return X


def hermitian(X) -> np.ndarray:
    """Return ``(X + X*)/2`` as a complex array.

    Idempotent: an already symmetrised matrix comes back bit-identical.
    """
    X = _square(X)
    return (X + X.conj().T) / 2


def hermiticity_defect(X) -> float:
    X = np.asarray(X, dtype=complex)
    return float(np.linalg.norm(X - X.conj().T))


def _psd_floor(eigenvalues: np.ndarray) -> float:
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return -EPS_PSD * (1.0 + scale)


def _clamp_psd(spec: Spectrum) -> Spectrum:
    lam = spec.eigenvalues
    floor = _psd_floor(lam)
    if lam[0] < floor:
        raise NotPSDError(f"matrix is not positive semidefinite: eigenvalue {lam[0]:.6e} < {floor:.3e}")
    return Spectrum(np.where(lam < 0, 0.0, lam), spec.eigenvectors)


def psd(X) -> np.ndarray:
    """Symmetrise ``X`` and check that its spectrum is nonnegative within tolerance."""
    H = hermitian(X)
    _clamp_psd(eig_hermitian(H))
    return H


def density(X) -> np.ndarray:
    """Return ``X / Tr X`` after checking ``X`` is PSD with positive trace."""
    H = psd(X)
    tr = float(np.trace(H).real)
    if tr <= 0:
        raise DomainError("density matrix needs positive trace")
    return H / tr


# --- eigensolvers ---------------------------------------------------------------------------


def jacobi_eigh(H, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> Spectrum:
    """Cyclic Jacobi eigensolver for complex Hermitian matrices.

    Each rotation first removes the phase of the pivot ``H[p, q]`` and then
    applies a real Givens rotation.  Sweeps stop once the off-diagonal
    Frobenius mass drops below ``tol * ||H||_F``.
    """
    A = hermitian(H).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    norm = np.linalg.norm(A)
    target = tol * norm

    offdiag = ~np.eye(n, dtype=bool)

    def off(M):
        return float(np.linalg.norm(M[offdiag]))

    residual = off(A)
    sweeps = 0
    while residual > target:
        if sweeps == max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", residual)
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(A[p, q])
                if g == 0.0:
                    continue
                phase = A[p, q] / g
                a, b = A[p, p].real, A[q, q].real
                theta = 0.5 * np.arctan2(2 * g, b - a)
                c, s = np.cos(theta), np.sin(theta)
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                J = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ J
                A[idx, :] = J.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ J
        sweeps += 1
        residual = off(A)

    lam = np.diag(A).real.copy()
    order = np.argsort(lam, kind="stable")
    return Spectrum(lam[order], V[:, order])


def eig_hermitian(H, method: str = "lapack") -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses
    :func:`jacobi_eigh`.  Both satisfy the same reconstruction contract.
    """
    if method == "jacobi":
        return jacobi_eigh(H)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    H = hermitian(H)
    lam, U = np.linalg.eigh(H)
    return Spectrum(lam, U)


# --- functional calculus --------------------------------------------------------------------


def _from_spectrum(spec: Spectrum, values: np.ndarray) -> np.ndarray:
    U = spec.eigenvectors
    return hermitian((U * values) @ U.conj().T)


def apply_fn(H, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Spectral functional calculus ``f(H)``.

    ``f`` is called once on the array of eigenvalues and must return an array
    of the same length.  Any non-finite output raises :class:`DomainError`.
    """
    spec = eig_hermitian(H)
    with np.errstate(all="ignore"):
        values = np.asarray(f(spec.eigenvalues), dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        lam = spec.eigenvalues[bad][0]
        raise DomainError(f"function undefined at eigenvalue {lam!r}")
    return _from_spectrum(spec, values)


def _power_values(lam: np.ndarray, p: float) -> np.ndarray:
    if p > 0:
        out = np.zeros_like(lam)
        pos = lam > 0
        out[pos] = lam[pos] ** p
        return out
    if p == 0:
        return np.ones_like(lam)
    return lam ** p


def psd_spectrum(A) -> Spectrum:
    """Spectrum of a PSD matrix with tolerance-level negative eigenvalues set to 0."""
    return _clamp_psd(eig_hermitian(A))


def mat_power(A, p: float) -> np.ndarray:
    """Spectral power ``A**p`` of a PSD matrix, with ``0**p = 0`` for ``p > 0``."""
    spec = psd_spectrum(A)
    if p <= 0:
        lam = spec.eigenvalues
        if lam[-1] <= 0 or lam[0] <= EPS_PSD * lam[-1]:
            raise SingularMatrixError(f"power {p} of a singular matrix (smallest eigenvalue {lam[0]:.3e})")
    return _from_spectrum(spec, _power_values(spec.eigenvalues, p))


def trace_power(A, p: float) -> float:
    """``Tr(A**p)`` straight from the spectrum."""
    lam = psd_spectrum(A).eigenvalues
    return float(np.sum(_power_values(lam, p)))


def mat_log(A) -> np.ndarray:
    spec = psd_spectrum(A)
    lam = spec.eigenvalues
    if lam[0] <= 0:
        raise SingularMatrixError("logarithm of a singular matrix")
    return _from_spectrum(spec, np.log(lam))


def positive_part(X) -> np.ndarray:
    """``X_+ = (X + |X|)/2``: keeps the nonnegative part of the spectrum."""
    spec = eig_hermitian(X)
    return _from_spectrum(spec, np.maximum(spec.eigenvalues, 0.0))


def trace_norm(X) -> float:
    """``Tr sqrt(X* X)``, the sum of singular values; ``X`` may be rectangular."""
    X = np.asarray(X, dtype=complex)
    if X.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(X, compute_uv=False)))


# --- random matrices ------------------------------------------------------------------------


def rng_from(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_psd(dim: int, scale: float = 1.0, rng_seed=None) -> np.ndarray:
    """Complex Wishart matrix ``scale * G G* / dim``.

    ``G`` has independent standard complex Gaussian entries.  ``rng_seed``
    may be an integer seed or a ``numpy.random.Generator``.
    """
    if dim < 1:
        raise ShapeError("dim must be >= 1")
    rng = rng_from(rng_seed)
    G = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    return hermitian(scale * (G @ G.conj().T) / dim)


def random_unitary(dim: int, rng_seed=None) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    rng = rng_from(rng_seed)
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_density(dim: int, rng_seed=None) -> np.ndarray:
    return density(random_psd(dim, 1.0, rng_seed))
