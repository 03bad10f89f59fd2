"""Exhaustive-enumeration references for Z, Z_M, Z_d and the estimator chi-square.

Assignments are enumerated by plain binary counting in chunks of 2**16; bit i of
the counter is the i-th free variable. Chunks are independent and their partial
log-sums are merged in chunk order, so results do not depend on ``threads``.
"""
import logging
import math
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from ..config import DEFAULT_MAX_ENUM_BITS
from ..errors import NotACycleGraph, TooLarge
from ..graph.core import Graph
from ..graph.trees import TreePartition
from ..jobs.runner import JobContext, JobRunner
from ..model.ising import (
    IsingModel,
    log_2cosh,
    log_2sinh,
    log_proposal_normalizer_dual,
    log_proposal_normalizer_primal,
    log_tanh,
)
from ..model.logspace import LogSumExpAccumulator, masked_log_sum, signed_logsumexp

logger = logging.getLogger(__name__)

CHUNK_BITS = 16

# chunk bits -> tuple of log-term arrays, one per accumulator
TermFunction = Callable[[NDArray[np.int64]], Tuple[NDArray[np.float64], ...]]


def _check_size(what: str, bits: int, limit: Optional[int]) -> int:
    limit = DEFAULT_MAX_ENUM_BITS if limit is None else limit
    if bits > limit:
        raise TooLarge(what, bits, limit)
    return limit


def _chunk_bits(chunk: int, width: int, bit_count: int) -> NDArray[np.int64]:
    idx = (np.int64(chunk) << np.int64(CHUNK_BITS)) + np.arange(width, dtype=np.int64)
    return (idx[:, None] >> np.arange(bit_count, dtype=np.int64)) & 1


def _enumerate(bit_count: int, terms: TermFunction, accumulators: int, threads: int = 1) -> List[float]:
    """Log-sum-exp of each term family over all 2**bit_count assignments."""
    if bit_count <= CHUNK_BITS:
        chunks, width = 1, 1 << bit_count
    else:
        chunks, width = 1 << (bit_count - CHUNK_BITS), 1 << CHUNK_BITS
    logger.info("enumerating 2^%d assignments in %d chunk(s)", bit_count, chunks)

    def job(ctx: JobContext) -> List[LogSumExpAccumulator]:
        bits = _chunk_bits(ctx.unit, width, bit_count)
        out = []
        for values in terms(bits):
            acc = LogSumExpAccumulator()
            acc.update(values)
            out.append(acc)
        return out

    partials = JobRunner(threads, handle_signals=False).run(chunks, job)
    totals = [LogSumExpAccumulator() for _ in range(accumulators)]
    for part in partials:
        totals = [t.merge(p) for t, p in zip(totals, part)]
    return [t.logsumexp() for t in totals]


def brute_force_log_Z(model: IsingModel, threads: int = 1, limit: Optional[int] = None) -> float:
    """ln Z summed over all 2**|V| spin configurations."""
    g = model.graph
    _check_size("|V|", g.vertex_count, limit)
    J = model.couplings
    total_j = float(np.sum(J))
    u, v = g.endpoints_u, g.endpoints_v

    def terms(x):
        disagree = x[:, u] ^ x[:, v]
        return (total_j - 2.0 * (disagree @ J),)

    return _enumerate(g.vertex_count, terms, 1, threads)[0]


def _chord_bits(partition: TreePartition, branch_bits: NDArray[np.int64]) -> NDArray[np.int64]:
    return (branch_bits @ partition.incidence.astype(np.int64)) & 1


def _branch_bits(partition: TreePartition, chord_bits: NDArray[np.int64]) -> NDArray[np.int64]:
    return (chord_bits @ partition.incidence.T.astype(np.int64)) & 1


def brute_force_log_ZM(model: IsingModel, partition: TreePartition, threads: int = 1,
                       limit: Optional[int] = None) -> float:
    """ln Z_M: branch assignments completed on the chords by cycle parity."""
    _check_size("|T|", partition.branch_count, limit)
    J = model.couplings
    total_j = float(np.sum(J))
    J_T = J[list(partition.branch_ids)]
    J_C = J[list(partition.chord_ids)]

    def terms(y_t):
        y_c = _chord_bits(partition, y_t)
        return (total_j - 2.0 * (y_t @ J_T + y_c @ J_C),)

    return _enumerate(partition.branch_count, terms, 1, threads)[0]


def brute_force_log_Zd(model: IsingModel, partition: TreePartition, threads: int = 1,
                       limit: Optional[int] = None) -> float:
    """ln Z_d: chord assignments completed on the branches by cutset parity."""
    _check_size("|T̄|", partition.chord_count, limit)
    model.require_ferromagnetic()
    J = model.couplings
    base = float(np.sum(log_2cosh(J)))
    lt_T = log_tanh(J[list(partition.branch_ids)])
    lt_C = log_tanh(J[list(partition.chord_ids)])

    def terms(y_c):
        y_t = _branch_bits(partition, y_c)
        return (base + masked_log_sum(y_c, lt_C) + masked_log_sum(y_t, lt_T),)

    return _enumerate(partition.chord_count, terms, 1, threads)[0]


def _chi_square(log_zq: float, log_first: float, log_second: float) -> float:
    # chi^2 = Z_q * sum(a w^2) / (sum(a w))^2 - 1
    return max(0.0, math.expm1(log_zq + log_second - 2.0 * log_first))


def exact_chi_square_primal(model: IsingModel, partition: TreePartition, threads: int = 1,
                            limit: Optional[int] = None) -> float:
    """chi^2(p'_M, q_T): the per-sample relative variance of the primal estimator."""
    _check_size("|T|", partition.branch_count, limit)
    J = model.couplings
    J_T = J[list(partition.branch_ids)]
    J_C = J[list(partition.chord_ids)]
    if not np.any(J_C):
        # every weight is 1
        return 0.0

    def terms(y_t):
        a = -2.0 * (y_t @ J_T)
        w = -2.0 * (_chord_bits(partition, y_t) @ J_C)
        return a + w, a + 2.0 * w

    first, second = _enumerate(partition.branch_count, terms, 2, threads)
    return _chi_square(log_proposal_normalizer_primal(model, partition), first, second)


def exact_chi_square_dual(model: IsingModel, partition: TreePartition, threads: int = 1,
                          limit: Optional[int] = None) -> float:
    """chi^2(p'_d, q_T̄): the per-sample relative variance of the dual estimator."""
    _check_size("|T̄|", partition.chord_count, limit)
    model.require_ferromagnetic()
    J = model.couplings
    if not np.any(J[list(partition.chord_ids)]):
        # only the all-zero chord assignment has positive probability
        return 0.0
    lt_T = log_tanh(J[list(partition.branch_ids)])
    lt_C = log_tanh(J[list(partition.chord_ids)])

    def terms(y_c):
        a = masked_log_sum(y_c, lt_C)
        w = masked_log_sum(_branch_bits(partition, y_c), lt_T)
        return a + w, a + 2.0 * w

    first, second = _enumerate(partition.chord_count, terms, 2, threads)
    return _chi_square(log_proposal_normalizer_dual(model, partition), first, second)


def is_single_cycle(model_or_graph: Union[IsingModel, Graph]) -> bool:
    g = getattr(model_or_graph, 'graph', model_or_graph)
    return (g.vertex_count >= 2 and g.edge_count == g.vertex_count
            and all(g.degree(x) == 2 for x in range(g.vertex_count)))


def closed_form_periodic_chain_log_Z(model: IsingModel) -> float:
    """ln(prod 2cosh J + prod 2sinh J) on a graph that is one cycle through every vertex."""
    if not is_single_cycle(model.graph):
        raise NotACycleGraph(f"{model.graph!r} is not a single cycle through all vertices")
    J = model.couplings
    log_cosh_part = float(np.sum(log_2cosh(J)))
    log_sinh_part = float(np.sum(log_2sinh(np.abs(J))))
    sign = float(np.prod(np.sign(J)))
    return signed_logsumexp([log_cosh_part, log_sinh_part], [1.0, sign])
