"""Primal-domain importance sampling: proposal on the spanning tree, weights on the chords."""
from typing import Callable, Optional, Union

import numpy as np
from numpy.typing import NDArray

from ..errors import InconsistentAssignment
from ..graph.trees import TreePartition
from ..model.ising import IsingModel, log_prefactor_primal, log_proposal_normalizer_primal
from .base import Assignment, BaseEstimator, Domain, EstimateReport
from .registry import register_estimator


def branch_one_probability(model: IsingModel, partition: TreePartition) -> NDArray[np.float64]:
    """P(y_b = 1) = e^{-2J} / (1 + e^{-2J}) for each branch, in branch order."""
    J = model.couplings[list(partition.branch_ids)]
    return 0.5 * (1.0 - np.tanh(J))


def draw_branch_assignment(model: IsingModel, partition: TreePartition, rng: np.random.Generator,
                           size: Optional[int] = None) -> NDArray[np.uint8]:
    """Independent branch bits from q_T; one vector, or ``size`` rows when given."""
    p1 = branch_one_probability(model, partition)
    shape = (partition.branch_count,) if size is None else (size, partition.branch_count)
    return (rng.random(shape) < p1).astype(np.uint8)


def chords_from_branches(partition: TreePartition, branch_bits: NDArray) -> NDArray[np.uint8]:
    """Chord bits forced by cycle parity; works on a vector or a (n, |T|) batch."""
    b = np.asarray(branch_bits, dtype=np.int64)
    return ((b @ partition.incidence.astype(np.int64)) & 1).astype(np.uint8)


def complete_chords(partition: TreePartition, branch_bits: NDArray) -> Assignment:
    b = np.asarray(branch_bits, dtype=np.uint8)
    if b.shape != (partition.branch_count,):
        raise InconsistentAssignment(f"expected {partition.branch_count} branch bits, got shape {b.shape}")
    bits = np.zeros(partition.graph.edge_count, dtype=np.uint8)
    bits[list(partition.branch_ids)] = b
    bits[list(partition.chord_ids)] = chords_from_branches(partition, b)
    return Assignment(bits, Domain.PRIMAL)


def lift_to_spins(partition: TreePartition, assignment: Union[Assignment, NDArray],
                  anchor_bit: int) -> NDArray[np.uint8]:
    """Spins x with x[root] = anchor_bit and x_u XOR x_v = y on every edge."""
    y = np.asarray(assignment.bits if isinstance(assignment, Assignment) else assignment, dtype=np.uint8)
    g = partition.graph
    if y.shape != (g.edge_count,):
        raise InconsistentAssignment(f"expected {g.edge_count} edge bits, got shape {y.shape}")
    x = np.zeros(g.vertex_count, dtype=np.uint8)
    x[partition.root] = anchor_bit & 1
    for v in partition.order[1:]:
        x[v] = x[partition.parent_vertex[v]] ^ y[partition.parent_edge[v]]
    if np.any((x[g.endpoints_u] ^ x[g.endpoints_v]) != y):
        raise InconsistentAssignment("edge assignment violates cycle parity")
    return x


@register_estimator("primal")
class PrimalEstimator(BaseEstimator):
    """Samples y_T from q_T and weights each draw by the reduced chord factors."""

    domain = Domain.PRIMAL

    def __init__(self, model: IsingModel, partition: TreePartition):
        super().__init__(model, partition)
        self._chord_log_factor = -2.0 * model.couplings[list(partition.chord_ids)]

    def log_prefactor(self) -> float:
        return log_prefactor_primal(self.model)

    def log_normalizer(self) -> float:
        return log_proposal_normalizer_primal(self.model, self.partition)

    def draw(self, rng: np.random.Generator, size: int) -> NDArray[np.uint8]:
        return draw_branch_assignment(self.model, self.partition, rng, size)

    def log_weights(self, free_bits: NDArray[np.uint8]) -> NDArray[np.float64]:
        chords = chords_from_branches(self.partition, free_bits)
        return chords @ self._chord_log_factor


def estimate_primal(model: IsingModel, partition: TreePartition, sample_count: int, seed: int,
                    threads: int = 1,
                    progress_callback: Optional[Callable[[int, int], None]] = None) -> EstimateReport:
    return PrimalEstimator(model, partition).run(sample_count, seed, threads, progress_callback)
