"""Tests for the dual (cospanning-tree) importance sampler."""
import math

import numpy as np
import pytest

from isingdual.errors import InconsistentAssignment, NonFerromagneticDual
from isingdual.graph import EdgeSet, TreePartition, fundamental_cycle, is_even_subgraph, maximum_spanning_tree
from isingdual.model import IsingModel, log_prefactor_dual, logsumexp
from isingdual.model.ising import log_2cosh
from isingdual.oracle import brute_force_log_Z, brute_force_log_Zd
from isingdual.sampling import (
    DualEstimator,
    Domain,
    EstimatorRegistry,
    block_generator,
    complete_branches,
    draw_chord_assignment,
    estimate_dual,
    estimate_primal,
)
from isingdual.sampling.dual import chord_one_probability
from isingdual.topology import lattice_2d

LN2 = math.log(2.0)


class TestProposal:
    def test_one_probability(self, triangle_model, triangle_partition):
        p = chord_one_probability(triangle_model, triangle_partition)
        assert p.shape == (1,)
        assert p[0] == pytest.approx(0.4323, abs=1e-4)
        t = math.tanh(1.0)
        assert p[0] == pytest.approx(t / (1.0 + t), rel=1e-14)

    def test_zero_coupling_chord_is_never_set(self, triangle, triangle_partition):
        model = IsingModel.create(triangle, [1.0, 1.0, 0.0])
        assert chord_one_probability(model, triangle_partition)[0] == 0.0
        bits = draw_chord_assignment(model, triangle_partition, np.random.default_rng(0), 1000)
        assert not bits.any()

    def test_strong_coupling_approaches_one_half(self, triangle, triangle_partition):
        model = IsingModel.create(triangle, [1.0, 1.0, 30.0])
        assert chord_one_probability(model, triangle_partition)[0] == pytest.approx(0.5, abs=1e-12)

    def test_negative_chord_rejected(self, triangle, triangle_partition):
        model = IsingModel.create(triangle, [1.0, 1.0, -0.2])
        with pytest.raises(NonFerromagneticDual) as info:
            chord_one_probability(model, triangle_partition)
        assert info.value.edge_id == 2

    @pytest.mark.stochastic
    def test_draw_frequency(self, triangle_model, triangle_partition):
        bits = draw_chord_assignment(triangle_model, triangle_partition, np.random.default_rng(3), 100_000)
        assert bits.shape == (100_000, 1)
        assert bits.mean() == pytest.approx(0.4323, abs=0.005)


class TestBranchCompletion:
    def test_triangle(self, triangle_partition):
        y = complete_branches(triangle_partition, [1])
        assert list(y.bits) == [1, 1, 1]
        assert y.domain is Domain.DUAL
        assert complete_branches(triangle_partition, [0]).ones() == []

    def test_four_cycle(self, four_cycle):
        p = TreePartition(four_cycle, [0, 1, 2])
        assert complete_branches(p, [1]).ones() == [0, 1, 2, 3]

    def test_wrong_length(self, triangle_partition):
        with pytest.raises(InconsistentAssignment):
            complete_branches(triangle_partition, [1, 0])

    @pytest.mark.parametrize("seed", range(30))
    def test_is_sum_of_fundamental_cycles(self, random_model, seed):
        model, p = random_model(seed, lo=0.05, hi=1.5)
        rng = np.random.default_rng(seed)
        g = model.graph
        for _ in range(5):
            chords = draw_chord_assignment(model, p, rng)
            y = complete_branches(p, chords)
            assert y.parity_ok(p)
            expected = EdgeSet(g.edge_count)
            for c, bit in zip(p.chord_ids, chords):
                if bit:
                    expected = expected ^ fundamental_cycle(p, c)
            assert set(y.ones()) == set(expected)
            assert is_even_subgraph(g, EdgeSet.from_mask(y.bits))


class TestEstimator:
    def test_registered(self, triangle_model, triangle_partition):
        assert EstimatorRegistry.has_estimator("dual")
        assert isinstance(EstimatorRegistry.get_estimator("dual", triangle_model, triangle_partition), DualEstimator)

    def test_rejects_antiferromagnets(self, triangle, triangle_partition):
        model = IsingModel.create(triangle, [1.0, -0.5, 1.0])
        with pytest.raises(NonFerromagneticDual):
            estimate_dual(model, triangle_partition, 100, seed=1)

    def test_tree_graph_is_exact(self, path3):
        model = IsingModel.create(path3, [0.7, 1.3])
        report = estimate_dual(model, TreePartition(path3, [0, 1]), 1000, seed=3)
        expected = float(np.sum(log_2cosh(model.couplings))) + LN2
        assert report.log_estimate == pytest.approx(expected, abs=1e-12)
        assert report.log_estimate == pytest.approx(brute_force_log_Z(model), abs=1e-12)
        assert report.empirical_chi_square == 0.0

    def test_zero_chord(self, triangle, triangle_partition):
        model = IsingModel.create(triangle, [1.0, 0.7, 0.0])
        report = estimate_dual(model, triangle_partition, 2000, seed=4)
        assert report.empirical_chi_square == 0.0
        assert report.log_estimate == pytest.approx(brute_force_log_Z(model), abs=1e-12)

    def test_zero_branch_coupling_is_allowed(self, triangle, triangle_partition):
        model = IsingModel.create(triangle, [0.0, 1.0, 1.0])
        report = estimate_dual(model, triangle_partition, 5000, seed=8)
        assert math.isfinite(report.log_estimate)

    def test_prefactor(self, triangle_model, triangle_partition):
        report = estimate_dual(triangle_model, triangle_partition, 100, seed=2)
        assert report.domain is Domain.DUAL
        assert report.log_estimate == pytest.approx(
            log_prefactor_dual(triangle_model, triangle_partition) + report.log_reduced_estimate, abs=1e-12)

    def test_deterministic_across_threads(self, random_model):
        model, p = random_model(31, lo=0.1, hi=1.5)
        n = 3 * 4096 + 17
        reports = [estimate_dual(model, p, n, seed=5, threads=k) for k in (1, 3, 8)]
        for r in reports[1:]:
            assert r.log_estimate == reports[0].log_estimate
            assert r.empirical_chi_square == reports[0].empirical_chi_square

    def test_streams_differ_from_primal(self):
        a = block_generator(7, Domain.PRIMAL, 0).random(4)
        b = block_generator(7, Domain.DUAL, 0).random(4)
        c = block_generator(7, Domain.DUAL, 1).random(4)
        assert not np.array_equal(a, b)
        assert not np.array_equal(b, c)
        assert np.array_equal(b, block_generator(7, Domain.DUAL, 0).random(4))


@pytest.mark.parametrize("seed", range(8))
def test_expectation_equals_reduced_partition_function(random_model, all_assignments, seed):
    model, p = random_model(seed, lo=0.05, hi=1.5, max_vertices=8, max_edges=16)
    estimator = DualEstimator(model, p)
    bits = all_assignments(p.chord_count)
    p1 = chord_one_probability(model, p)
    log_q = bits @ np.log(p1) + (1 - bits) @ np.log1p(-p1)
    log_expectation = estimator.log_normalizer() + logsumexp(log_q + estimator.log_weights(bits))
    log_reduced = brute_force_log_Zd(model, p) - float(np.sum(log_2cosh(model.couplings)))
    assert log_expectation == pytest.approx(log_reduced, abs=1e-9)


@pytest.mark.stochastic
class TestConvergence:
    def test_triangle(self, triangle_model, triangle_partition):
        report = estimate_dual(triangle_model, triangle_partition, 100_000, seed=1729)
        exact = math.log(42.37835049340399)
        assert abs(report.log_estimate - exact) <= 3 * report.std_error_log

    def test_periodic_lattice_strong_coupling(self):
        model = IsingModel.create(lattice_2d(3, 3, periodic=True), np.full(18, 1.2))
        p = maximum_spanning_tree(model.graph, model.tree_weights())
        report = estimate_dual(model, p, 100_000, seed=1729)
        exact = brute_force_log_Z(model)
        assert abs(report.log_estimate - exact) <= 3 * report.std_error_log
        assert abs(math.expm1(report.log_estimate - exact)) <= 0.02

    @pytest.mark.parametrize("seed", [3, 11, 27, 40])
    def test_agrees_with_primal_on_random_ferromagnets(self, random_model, seed):
        model, p = random_model(seed, lo=0.3, hi=1.0, max_vertices=10, max_edges=14)
        exact = brute_force_log_Z(model)
        primal = estimate_primal(model, p, 100_000, seed=seed)
        dual = estimate_dual(model, p, 100_000, seed=seed)
        # tree graphs give a zero standard error
        assert abs(primal.log_estimate - exact) <= 4 * primal.std_error_log + 1e-9
        assert abs(dual.log_estimate - exact) <= 4 * dual.std_error_log + 1e-9
        spread = math.hypot(primal.std_error_log, dual.std_error_log)
        assert abs(primal.log_estimate - dual.log_estimate) <= 4 * spread + 1e-9
