"""Exact Chamberlin-Courant and Thiele committees on (nearly) single-peaked profiles."""

from .cc_sp import CcSpInstance, decide_cc_sp, solve_cc_sp
from .core import (
    RULES,
    ApprovalProfile,
    Axis,
    CommitteeResult,
    InvariantError,
    MisrepProfile,
    NotSinglePeakedError,
    ProfileError,
    ThieleWeights,
    misrep_of_committee,
    restrict_after_deletion,
    rule_sequence,
    thiele_utility,
    verify_candidate_intervals,
    verify_sp_axis,
)
from .gen import GenParams, gen_ci_approvals, gen_nearly_sp, gen_sp_misrep
from .linkpath import min_weight_t_link_path, naive_t_link_path
from .monge import EdgeWeightOracle, build_edge_weight_oracle
from .nearly_sp import (
    DeletionInstance,
    reduce_cc_with_preelected,
    shift_weights,
    solve_cc_with_deletion_set,
    solve_thiele_with_deletion_set,
)
from .oracle import brute_force_cc, brute_force_thiele, direct_edge_weight
from .thiele_sp import NonIntegralVertexError, build_pav_ip, solve_generalized_thiele_sp, solve_lp_exact

__version__ = "0.1.0"
