"""Ising model module"""
from .ising import (
    IsingModel,
    dual_scale_log,
    factor_dual,
    factor_dual_reduced,
    factor_primal,
    factor_primal_reduced,
    log_dual_weight,
    log_edge_weight,
    log_prefactor_dual,
    log_prefactor_primal,
    log_proposal_normalizer_dual,
    log_proposal_normalizer_primal,
    log_spin_weight,
)
from .logspace import (
    NEG_INF,
    LogSumExpAccumulator,
    LogWeight,
    WeightMoments,
    logsumexp,
    masked_log_sum,
    signed_logsumexp,
)
