"""Trace functionals, partial traces and numerical checks of Minkowski-type
trace inequalities for positive matrices."""

from .functionals import (
    PExponent,
    bks_sides,
    bks_subadditivity_sides,
    entropy,
    minkowski2_sides,
    minkowski3_sides,
    phi_p,
    psi_p,
    ssa_deficit,
)
from .matcore import (
    Spectrum,
    apply_fn,
    density,
    eig_hermitian,
    hermitian,
    mat_power,
    positive_part,
    psd,
    random_density,
    random_psd,
    random_unitary,
    trace_norm,
)
from .tensor import (
    SignedPermutation,
    TensorSpace,
    embed_factor,
    group_average,
    kron,
    partial_trace,
    signed_permutation_group,
)

__version__ = "0.1.0"
