"""Dual-domain importance sampling: proposal on the chords, weights on the spanning tree.

Ferromagnetic couplings only. A zero coupling is allowed: its chord is never
drawn as 1, and a branch with zero coupling turns any draw that sets it into a
zero weight.
"""
from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray

from ..errors import InconsistentAssignment
from ..graph.trees import TreePartition
from ..model.ising import IsingModel, log_prefactor_dual, log_proposal_normalizer_dual, log_tanh
from ..model.logspace import masked_log_sum
from .base import Assignment, BaseEstimator, Domain, EstimateReport
from .registry import register_estimator


def chord_one_probability(model: IsingModel, partition: TreePartition) -> NDArray[np.float64]:
    """P(y~_c = 1) = tanh J / (1 + tanh J) for each chord, in chord order."""
    model.require_ferromagnetic(partition.chord_ids)
    t = np.tanh(model.couplings[list(partition.chord_ids)])
    return t / (1.0 + t)


def draw_chord_assignment(model: IsingModel, partition: TreePartition, rng: np.random.Generator,
                          size: Optional[int] = None) -> NDArray[np.uint8]:
    p1 = chord_one_probability(model, partition)
    shape = (partition.chord_count,) if size is None else (size, partition.chord_count)
    return (rng.random(shape) < p1).astype(np.uint8)


def branches_from_chords(partition: TreePartition, chord_bits: NDArray) -> NDArray[np.uint8]:
    """Branch bits forced by cutset parity; works on a vector or a (n, |T̄|) batch."""
    c = np.asarray(chord_bits, dtype=np.int64)
    return ((c @ partition.incidence.T.astype(np.int64)) & 1).astype(np.uint8)


def complete_branches(partition: TreePartition, chord_bits: NDArray) -> Assignment:
    c = np.asarray(chord_bits, dtype=np.uint8)
    if c.shape != (partition.chord_count,):
        raise InconsistentAssignment(f"expected {partition.chord_count} chord bits, got shape {c.shape}")
    bits = np.zeros(partition.graph.edge_count, dtype=np.uint8)
    bits[list(partition.chord_ids)] = c
    bits[list(partition.branch_ids)] = branches_from_chords(partition, c)
    return Assignment(bits, Domain.DUAL)


@register_estimator("dual")
class DualEstimator(BaseEstimator):
    """Samples y~ on the chords from q_T̄ and weights by the reduced branch factors."""

    domain = Domain.DUAL

    def __init__(self, model: IsingModel, partition: TreePartition):
        super().__init__(model, partition)
        model.require_ferromagnetic()
        self._branch_log_factor = log_tanh(model.couplings[list(partition.branch_ids)])

    def log_prefactor(self) -> float:
        return log_prefactor_dual(self.model, self.partition)

    def log_normalizer(self) -> float:
        return log_proposal_normalizer_dual(self.model, self.partition)

    def draw(self, rng: np.random.Generator, size: int) -> NDArray[np.uint8]:
        return draw_chord_assignment(self.model, self.partition, rng, size)

    def log_weights(self, free_bits: NDArray[np.uint8]) -> NDArray[np.float64]:
        branches = branches_from_chords(self.partition, free_bits)
        return masked_log_sum(branches, self._branch_log_factor)


def estimate_dual(model: IsingModel, partition: TreePartition, sample_count: int, seed: int,
                  threads: int = 1,
                  progress_callback: Optional[Callable[[int, int], None]] = None) -> EstimateReport:
    return DualEstimator(model, partition).run(sample_count, seed, threads, progress_callback)
