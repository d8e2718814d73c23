"""
Concavity, convexity, and where it stops
========================================

Midpoint probes for Phi_p across the exponent regimes. For p <= 1 the
functional is jointly concave, at p = 2 jointly convex; between 1 and 2 the
question is open, and beyond 2 convexity fails.
"""

from tracemink import probes

for p in (0.25, 0.5, 1.0, 2.0):
    rep = probes.midpoint_probe(p, n=2, dim=3, trials=200, seed=1)
    print(rep.summary())

# Between 1 and 2 nothing is proven, so the probe only records what it sees.
rep = probes.midpoint_probe(1.5, n=2, dim=3, trials=200, seed=1)
print(rep.summary())

# Above 2 the probe reports the raw gap d = Phi_p(mid) - average. Random
# draws give d < 0 (they look convex), and every such trial is counted in
# the exploratory "violations" tally. A convexity failure needs d > 0, which
# random sampling does not find; the constructive search in
# 03_counterexample.py does.
rep = probes.midpoint_probe(3.0, n=2, dim=2, trials=200, seed=1)
print(rep.summary())
