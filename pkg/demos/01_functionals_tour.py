"""
A tour of the trace functionals
===============================

Phi_p glues a tuple of PSD matrices together with a matrix p-norm;
Psi_p is its two-space cousin, built from a partial trace.
"""

import numpy as np

from tracemink import kron, partial_trace, phi_p, psi_p, random_psd
from tracemink.probes import block_diag, group_average_residual

rng = np.random.default_rng(0)

# Phi_p(A_1, ..., A_n) = Tr (sum_j A_j^p)^(1/p). With one argument it is just the trace.
A = random_psd(3, 1.0, rng)
print("Tr A          ", np.trace(A).real)
print("phi_p([A], 3) ", phi_p([A], 3))

# For commuting (diagonal) inputs it is a sum of l^p norms of the eigenvalue columns.
a, b = rng.random(4), rng.random(4)
print("phi_2 diag    ", phi_p([np.diag(a), np.diag(b)], 2), "vs", np.sum(np.hypot(a, b)))

# Kronecker convention: factor 0 is the slow (leftmost) index, so
# partial_trace(kron(X, Y), dims, 0) = Tr(X) * Y.
X, Y = random_psd(2, 1.0, rng), random_psd(3, 1.0, rng)
err = np.abs(partial_trace(kron(X, Y), (2, 3), 0) - np.trace(X) * Y).max()
print("Tr_0(X (x) Y) - Tr(X) Y   ", err)

# Psi_p on a block-diagonal operator collapses to Phi_p of the blocks,
# provided the block index (factor 0) is the one traced outside the power.
A1, A2 = random_psd(3, 1.0, rng), random_psd(3, 1.0, rng)
print("psi_p(blockdiag)           ", psi_p(block_diag(A1, A2), (2, 3), 0.5, traced=0))
print("phi_p(A1, A2)              ", phi_p([A1, A2], 0.5))

# Averaging over the signed permutations of the second factor implements the
# partial trace: the average equals Tr_1(A) (x) I / N, with the identity in the averaged slot.
H = random_psd(6, 1.0, rng)
print("group average residual     ", group_average_residual(H, (2, 3)))
