"""
Building a convexity counterexample for p > 2
=============================================

x -> x^p is not operator convex for p > 2, so there are A1, A2 and a unit
vector v with <v, ((A1+A2)/2)^p v> > <v, (A1^p + A2^p)/2 v>. Pairing the
small perturbations t*A_j with B = P_v + lambda (I - P_v) turns that into a
violation of midpoint convexity of (A -> Phi_p(A, B)).
"""

from tracemink import probes

for p in (2.5, 3.0, 4.0):
    w = probes.counterexample_p_gt_2(p, dim=2, seed=0)
    print(f"p={p}: lambda={w.lam:g} t={w.t:g} margin={w.margin:.3e} "
          f"(operator gap {w.operator_gap:.3e}, {w.attempts} search attempts)")

# The excess vanishes like t^p: p t^-p * excess tends to a finite limit which,
# for large lambda, approaches the operator-convexity gap <v, D v>.
w = probes.counterexample_p_gt_2(3.0, dim=2, seed=0)
for t in (1e-1, 1e-2):
    scaled = 3.0 * t**-3.0 * probes.midpoint_excess(w.A1, w.A2, w.B, t, 3.0)
    print(f"t={t:g}: p t^-p excess = {scaled:.6f}  (limit {w.limit_value:.6f})")

# The expansion itself: the remainder after the first-order term is O(t^(2p)).
rep = probes.small_t_expansion(w.A1, w.B, 3.0)
print("fitted remainder exponent", rep.exponent)
