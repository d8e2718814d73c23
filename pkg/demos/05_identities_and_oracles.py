"""
Exact identities and the classical picture
==========================================

Identities hold to round-off; the commutative case reduces every statement
to sums over a joint probability table.
"""

import numpy as np

from tracemink import probes, random_psd

rng = np.random.default_rng(5)
A, B = random_psd(3, 1.0, rng), random_psd(3, 1.0, rng)

print("2x2 block identity, p=0.5 ", probes.verify_block_identity(A, B, 0.5))
print("Phi_2 = trace norm         ", probes.verify_sahi([A, B]))
w = probes.dual_witness_minkowski2(random_psd(6, 1.0, rng), (2, 3), 3.0)
print("dual witness residual      ", w.residual)
m = probes.verify_mpm_spectra(A, B, 2.5)
print("M+- spectra / traces       ", m.spectrum_residual, m.trace_residual)
print("concavity slack Tr(A+B) - Phi_2.5", m.concavity_slack)

# Classical: f[x, y, z] >= 0. The integral Minkowski inequality and the
# diagonal embedding must agree to round-off.
f = rng.random((2, 3, 2))
cl = probes.classical_oracle(f, 2.0)
print("classical Minkowski sides  ", cl.minkowski_lhs, cl.minkowski_rhs)
print("classical entropy combination", cl.entropy_combination)
