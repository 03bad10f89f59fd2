"""Ising couplings, the primal/dual local factors and their closed-form normalizers.

Every weight is returned as a natural log. J absorbs the inverse temperature.
Primal factors work for couplings of either sign; dual factors require J >= 0.
"""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from ..errors import InvalidCouplings, NonFerromagneticDual
from ..graph.core import Graph
from ..graph.trees import TreePartition
from .logspace import NEG_INF, LogWeight

LN2 = math.log(2.0)


@dataclass(frozen=True, eq=False)
class IsingModel:
    """A graph with one real coupling per edge id."""
    graph: Graph
    couplings: NDArray[np.float64]

    def __post_init__(self):
        j = np.array(self.couplings, dtype=np.float64)
        if j.shape != (self.graph.edge_count,):
            raise InvalidCouplings(f"expected {self.graph.edge_count} couplings, got {j.size}")
        if not np.all(np.isfinite(j)):
            raise InvalidCouplings("couplings must be finite")
        j.setflags(write=False)
        object.__setattr__(self, 'couplings', j)

    @classmethod
    def create(cls, graph: Graph, couplings: Sequence[float]) -> 'IsingModel':
        return cls(graph, np.asarray(couplings, dtype=np.float64))

    @property
    def is_ferromagnetic(self) -> bool:
        """True when every coupling is non-negative (what the dual domain needs)."""
        return bool(np.all(self.couplings >= 0.0))

    def require_ferromagnetic(self, edge_ids=None) -> None:
        ids = range(self.graph.edge_count) if edge_ids is None else edge_ids
        for i in ids:
            if self.couplings[i] < 0.0:
                raise NonFerromagneticDual(i, float(self.couplings[i]))

    def tree_weights(self) -> NDArray[np.float64]:
        """Default spanning-tree weights: coupling magnitudes."""
        return np.abs(self.couplings)


# Local factors

def factor_primal(J: float, y: int) -> LogWeight:
    return float(J) if y == 0 else -float(J)


def factor_primal_reduced(J: float, y: int) -> LogWeight:
    return -2.0 * float(J) * y if y else 0.0


def log_2cosh(J):
    return np.logaddexp(J, np.negative(J))


def log_2sinh(J):
    """ln(2 sinh J) for J >= 0; -inf at J = 0."""
    J = np.asarray(J, dtype=np.float64)
    with np.errstate(divide='ignore'):
        return J + np.log(-np.expm1(-2.0 * J))


def log_tanh(J):
    """ln(tanh J) for J >= 0; -inf at J = 0, -> 0 as J grows."""
    J = np.asarray(J, dtype=np.float64)
    with np.errstate(divide='ignore'):
        return np.log(-np.expm1(-2.0 * J)) - np.log1p(np.exp(-2.0 * J))


def factor_dual(J: float, ytilde: int) -> LogWeight:
    if ytilde == 0:
        return float(log_2cosh(J))
    if J < 0.0:
        raise NonFerromagneticDual(coupling=float(J))
    return float(log_2sinh(J))


def factor_dual_reduced(J: float, ytilde: int) -> LogWeight:
    if J < 0.0:
        raise NonFerromagneticDual(coupling=float(J))
    if ytilde == 0:
        return 0.0
    return float(log_tanh(J))


# Whole-model quantities

def log_prefactor_primal(model: IsingModel) -> float:
    """ln(2A) with A = exp(sum J): ln Z = ln(2A) + ln Z'_M."""
    return LN2 + float(np.sum(model.couplings))


def dual_scale_log(graph: Graph) -> float:
    """ln alpha(G) = (|E| - |V|) ln 2, the ratio Z_d / Z."""
    return (graph.edge_count - graph.vertex_count) * LN2


def log_prefactor_dual(model: IsingModel, partition: TreePartition) -> float:
    """ln B - ln alpha(G): ln Z = this + ln Z'_d."""
    model.require_ferromagnetic()
    return float(np.sum(log_2cosh(model.couplings))) - dual_scale_log(model.graph)


def log_proposal_normalizer_primal(model: IsingModel, partition: TreePartition) -> float:
    """ln Z_qT = sum over branches of ln(1 + exp(-2J))."""
    J = model.couplings[list(partition.branch_ids)]
    return float(np.sum(np.logaddexp(0.0, -2.0 * J)))


def log_proposal_normalizer_dual(model: IsingModel, partition: TreePartition) -> float:
    """ln Z_qT̄ = sum over chords of ln(1 + tanh J)."""
    model.require_ferromagnetic(partition.chord_ids)
    J = model.couplings[list(partition.chord_ids)]
    return float(np.sum(np.log1p(np.tanh(J))))


def log_spin_weight(model: IsingModel, spins: Sequence[int]) -> float:
    """ln f(x): +J on agreeing endpoints, -J on disagreeing ones."""
    x = np.asarray(spins, dtype=np.int64)
    g = model.graph
    disagree = x[g.endpoints_u] != x[g.endpoints_v]
    return float(np.sum(np.where(disagree, -model.couplings, model.couplings)))


def log_edge_weight(model: IsingModel, bits: Sequence[int]) -> float:
    """ln Upsilon(y) of a full primal edge assignment."""
    y = np.asarray(bits, dtype=np.int64)
    return float(np.sum(model.couplings) - 2.0 * np.dot(model.couplings, y))


def log_dual_weight(model: IsingModel, bits: Sequence[int]) -> float:
    """ln Gamma(y~) of a full dual edge assignment."""
    model.require_ferromagnetic()
    y = np.asarray(bits, dtype=bool)
    J = model.couplings
    if np.any(y & (J == 0.0)):
        return NEG_INF
    return float(np.sum(np.where(y, log_2sinh(np.where(y, J, 1.0)), log_2cosh(J))))
