"""
Minkowski trace inequalities and strong subadditivity
=====================================================

The two- and three-space inequalities compare "sum, then p-norm" against
"p-norm, then sum". At p = 1 both sides are the full trace, and the left
derivative at p = 1 of the three-space gap is exactly the SSA deficit
S(13) + S(23) - S(123) - S(3).
"""

import numpy as np

from tracemink import probes, random_density, ssa_deficit

print(probes.verify_minkowski2(200, (2, 3), 2.0, seed=0).summary())
print(probes.verify_minkowski2(200, (2, 3), 0.5, seed=0).summary())  # reversed for p < 1
print(probes.verify_minkowski3(200, (2, 2, 2), 2.0, seed=0).summary())

rng = np.random.default_rng(3)
rho = random_density(8, rng)
print("SSA deficit", ssa_deficit(rho, (2, 2, 2)))

study = probes.ssa_limit_study(rho, (2, 2, 2))
for h, fd in zip(study.steps, study.fd):
    print(f"  h={h:g}: backward difference {fd:.10f}")
print("  Richardson extrapolation", study.richardson[-1])
