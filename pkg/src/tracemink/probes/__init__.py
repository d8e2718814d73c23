"""Verification campaigns, constructions and identity checks."""

from .campaigns import (
    midpoint_gap,
    midpoint_probe,
    verify_bks,
    verify_ssa,
    verify_minkowski2,
    verify_minkowski3,
)
from .classical import ClassicalResult, classical_oracle, minkowski_embedding, ssa_embedding
from .constructions import (
    ConstructionFailure,
    ConvexityWitness,
    ExpansionReport,
    OperatorConvexityWitness,
    SearchFailure,
    counterexample_p_gt_2,
    limit_value,
    midpoint_excess,
    operator_convexity_witness,
    small_t_expansion,
)
from .identities import (
    DualWitness,
    MpmReport,
    block_diag,
    block_diag_reduction,
    column_stack_operator,
    dual_witness_minkowski2,
    group_average_residual,
    verify_block_identity,
    verify_mpm_spectra,
    verify_sahi,
)
from .limits import LimitPoint, LimitStudy, richardson, ssa_from_limit, ssa_limit_study
from .report import DEFAULT_TOL, SLACK_TABLE, ProbeReport, slack_rule

# Names used by the external interface contract; the neutral names above are canonical.
verify_theorem2 = verify_minkowski2
verify_theorem3 = verify_minkowski3
dual_witness_theorem2 = dual_witness_minkowski2
verify_identity_3_1 = verify_block_identity
