"""Shared machinery for the primal and dual importance samplers."""
import logging
import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional

import numpy as np
from numpy.typing import NDArray

from ..config import SAMPLE_BLOCK
from ..errors import InconsistentAssignment, NumericFailure
from ..graph.trees import TreePartition
from ..jobs.runner import JobContext, JobRunner
from ..model.ising import IsingModel
from ..model.logspace import WeightMoments

logger = logging.getLogger(__name__)


class Domain(str, Enum):
    PRIMAL = "primal"
    DUAL = "dual"

    @property
    def stream_tag(self) -> int:
        return 0 if self is Domain.PRIMAL else 1


@dataclass(frozen=True, eq=False)
class Assignment:
    """A binary value per edge id, tagged with the domain it lives in.

    Primal assignments obey cycle parity (every fundamental cycle sums to 0),
    dual assignments obey cutset parity (every fundamental cutset sums to 0).
    """
    bits: NDArray[np.uint8]
    domain: Domain

    def __post_init__(self):
        b = np.array(self.bits, dtype=np.uint8)
        if b.ndim != 1 or np.any(b > 1):
            raise InconsistentAssignment("assignment must be a 0/1 vector")
        b.setflags(write=False)
        object.__setattr__(self, 'bits', b)

    def branch_bits(self, partition: TreePartition) -> NDArray[np.uint8]:
        return self.bits[list(partition.branch_ids)]

    def chord_bits(self, partition: TreePartition) -> NDArray[np.uint8]:
        return self.bits[list(partition.chord_ids)]

    def ones(self):
        return [int(i) for i in np.flatnonzero(self.bits)]

    def parity_ok(self, partition: TreePartition) -> bool:
        M = partition.incidence.astype(np.int64)
        t = self.branch_bits(partition).astype(np.int64)
        c = self.chord_bits(partition).astype(np.int64)
        if self.domain is Domain.PRIMAL:
            return bool(np.array_equal((t @ M) & 1, c))
        return bool(np.array_equal((c @ M.T) & 1, t))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self.domain is other.domain and np.array_equal(self.bits, other.bits)

    def __repr__(self) -> str:
        return f"Assignment({self.domain.value}, ones={self.ones()})"


@dataclass(frozen=True)
class EstimateReport:
    """Result of one estimator run; every log is natural."""
    domain: Domain
    log_estimate: float
    log_reduced_estimate: float
    std_error_log: float
    empirical_chi_square: float
    sample_count: int
    seed: int
    wall_time_seconds: float

    def to_dict(self) -> Dict:
        return {
            'domain': self.domain.value,
            'log_estimate': self.log_estimate,
            'log_reduced_estimate': self.log_reduced_estimate,
            'std_error_log': self.std_error_log,
            'empirical_chi_square': self.empirical_chi_square,
            'sample_count': self.sample_count,
            'seed': self.seed,
            'wall_time_seconds': self.wall_time_seconds,
        }


def block_generator(seed: int, domain: Domain, block: int) -> np.random.Generator:
    """Counter-based substream for one block of sample indices."""
    seq = np.random.SeedSequence(entropy=int(seed) & 0xFFFFFFFFFFFFFFFF,
                                 spawn_key=(domain.stream_tag, int(block)))
    return np.random.Generator(np.random.Philox(seq))


def block_count(sample_count: int) -> int:
    return (sample_count + SAMPLE_BLOCK - 1) // SAMPLE_BLOCK


class BaseEstimator(ABC):
    """Importance sampler: draw free bits from a product proposal, complete the
    dependent bits by parity, weight by the factors on the dependent edges."""

    domain: Domain

    def __init__(self, model: IsingModel, partition: TreePartition):
        if partition.graph != model.graph:
            raise InconsistentAssignment("partition was built for a different graph")
        self.model = model
        self.partition = partition

    @abstractmethod
    def log_prefactor(self) -> float:
        """ln of the constant that turns the reduced estimate into an estimate of Z."""

    @abstractmethod
    def log_normalizer(self) -> float:
        """ln of the proposal normalizer."""

    @abstractmethod
    def draw(self, rng: np.random.Generator, size: int) -> NDArray[np.uint8]:
        """``size`` independent draws of the free bits, shape (size, k)."""

    @abstractmethod
    def log_weights(self, free_bits: NDArray[np.uint8]) -> NDArray[np.float64]:
        """ln of the dependent-edge factor product for each row of ``free_bits``."""

    def _run_block(self, seed: int, sample_count: int, ctx: JobContext) -> WeightMoments:
        start = ctx.unit * SAMPLE_BLOCK
        size = min(SAMPLE_BLOCK, sample_count - start)
        rng = block_generator(seed, self.domain, ctx.unit)
        return WeightMoments.of(self.log_weights(self.draw(rng, size)))

    def run(self, sample_count: int, seed: int, threads: int = 1,
            progress_callback: Optional[Callable[[int, int], None]] = None) -> EstimateReport:
        if sample_count < 1:
            raise ValueError(f"sample_count must be >= 1, got {sample_count}")
        started = time.perf_counter()
        log_prefactor = self.log_prefactor()
        log_normalizer = self.log_normalizer()
        blocks = block_count(sample_count)
        logger.info("%s estimator: %d samples in %d block(s) on %d thread(s)",
                    self.domain.value, sample_count, blocks, threads)

        runner = JobRunner(threads, progress_callback)
        partials = runner.run(blocks, lambda ctx: self._run_block(seed, sample_count, ctx))
        moments = WeightMoments()
        for part in partials:
            moments = moments.merge(part)

        log_reduced = log_normalizer + moments.log_mean()
        report = EstimateReport(
            domain=self.domain,
            log_estimate=log_prefactor + log_reduced,
            log_reduced_estimate=log_reduced,
            std_error_log=moments.std_error_log(),
            empirical_chi_square=moments.chi_square(),
            sample_count=sample_count,
            seed=seed,
            wall_time_seconds=time.perf_counter() - started,
        )
        for name in ('log_estimate', 'std_error_log', 'empirical_chi_square'):
            if math.isnan(getattr(report, name)):
                raise NumericFailure(f"{self.domain.value} {name} is NaN")
        logger.info("%s estimate ln Z = %.10g (se %.3g, chi2 %.4g)", self.domain.value,
                    report.log_estimate, report.std_error_log, report.empirical_chi_square)
        return report
