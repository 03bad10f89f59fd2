"""Tests for the exhaustive-enumeration references."""
import math

import numpy as np
import pytest

from isingdual.errors import NonFerromagneticDual, NotACycleGraph, TooLarge
from isingdual.graph import TreePartition, build_graph, maximum_spanning_tree, random_spanning_tree
from isingdual.model import IsingModel, dual_scale_log
from isingdual.model.ising import log_2cosh
from isingdual.oracle import (
    brute_force_log_Z,
    brute_force_log_Zd,
    brute_force_log_ZM,
    closed_form_periodic_chain_log_Z,
    exact_chi_square_dual,
    exact_chi_square_primal,
    is_single_cycle,
)
from isingdual.topology import complete_graph, lattice_2d, periodic_chain

LN2 = math.log(2.0)

SUITE_GRAPHS = [
    periodic_chain(3), periodic_chain(5), periodic_chain(8), periodic_chain(12),
    lattice_2d(2, 2), lattice_2d(2, 3), lattice_2d(3, 3), lattice_2d(3, 4),
    lattice_2d(3, 3, periodic=True), lattice_2d(3, 4, periodic=True),
    complete_graph(4), complete_graph(5), complete_graph(6), complete_graph(7),
    build_graph(2, [(0, 1), (0, 1), (1, 0)]),
    build_graph(4, [(0, 1), (1, 2), (2, 3)]),
    build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 4)]),
    build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)]),
    build_graph(3, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2)]),
    build_graph(10, [(i, (i + 1) % 10) for i in range(10)] + [(0, 5), (2, 7)]),
]


def suite_model(index, ferromagnetic=False):
    graph = SUITE_GRAPHS[index]
    J = np.random.default_rng(index).uniform(-1.5, 1.5, graph.edge_count)
    return IsingModel.create(graph, np.abs(J) if ferromagnetic else J)


class TestPartitionFunction:
    def test_single_edge(self, single_edge):
        model = IsingModel.create(single_edge, [1.0])
        assert brute_force_log_Z(model) == pytest.approx(math.log(4.0 * math.cosh(1.0)), abs=1e-12)
        assert brute_force_log_Z(model) == pytest.approx(1.8200, abs=1e-4)

    def test_triangle(self, triangle_model):
        expected = math.log(2.0 * math.exp(3.0) + 6.0 * math.exp(-1.0))
        assert brute_force_log_Z(triangle_model) == pytest.approx(expected, abs=1e-12)
        assert math.exp(brute_force_log_Z(triangle_model)) == pytest.approx(42.378, abs=1e-3)

    def test_free_spins(self, random_graph):
        g = random_graph(4)
        model = IsingModel.create(g, np.zeros(g.edge_count))
        assert brute_force_log_Z(model) == pytest.approx(g.vertex_count * LN2, abs=1e-12)

    def test_strong_couplings_do_not_overflow(self, triangle):
        model = IsingModel.create(triangle, [400.0, 400.0, 400.0])
        assert brute_force_log_Z(model) == pytest.approx(1200.0 + LN2, rel=1e-14)

    def test_too_large(self):
        model = IsingModel.create(periodic_chain(5), np.ones(5))
        with pytest.raises(TooLarge):
            brute_force_log_Z(model, limit=4)


class TestConstrainedSums:
    def test_ZM_examples(self, single_edge, triangle_model, triangle_partition):
        model = IsingModel.create(single_edge, [1.0])
        p = TreePartition(single_edge, [0])
        assert brute_force_log_ZM(model, p) == pytest.approx(math.log(math.e + 1.0 / math.e), abs=1e-12)
        expected = math.log(math.exp(3.0) + 3.0 * math.exp(-1.0))
        assert brute_force_log_ZM(triangle_model, triangle_partition) == pytest.approx(expected, abs=1e-12)

    def test_Zd_examples(self, path3, triangle_model, triangle_partition):
        tree = IsingModel.create(path3, [0.4, 1.3])
        expected = float(np.sum(log_2cosh(tree.couplings)))
        assert brute_force_log_Zd(tree, TreePartition(path3, [0, 1])) == pytest.approx(expected, abs=1e-12)
        c, s = 2.0 * math.cosh(1.0), 2.0 * math.sinh(1.0)
        assert brute_force_log_Zd(triangle_model, triangle_partition) == pytest.approx(
            math.log(c ** 3 + s ** 3), abs=1e-12)

    def test_Zd_rejects_antiferromagnets(self, triangle, triangle_partition):
        model = IsingModel.create(triangle, [1.0, -1.0, 1.0])
        with pytest.raises(NonFerromagneticDual):
            brute_force_log_Zd(model, triangle_partition)

    @pytest.mark.parametrize("index", range(len(SUITE_GRAPHS)))
    def test_Z_is_twice_ZM(self, index):
        model = suite_model(index)
        p = maximum_spanning_tree(model.graph, model.tree_weights())
        assert brute_force_log_Z(model) - brute_force_log_ZM(model, p) == pytest.approx(LN2, abs=1e-10)

    @pytest.mark.parametrize("index", range(len(SUITE_GRAPHS)))
    def test_duality_scale(self, index):
        model = suite_model(index, ferromagnetic=True)
        p = maximum_spanning_tree(model.graph, model.tree_weights())
        gap = brute_force_log_Zd(model, p) - brute_force_log_Z(model)
        assert gap == pytest.approx(dual_scale_log(model.graph), abs=1e-10)

    def test_periodic_lattice_scale_is_two_to_the_ninth(self):
        model = IsingModel.create(lattice_2d(3, 3, periodic=True), np.full(18, 0.7))
        p = maximum_spanning_tree(model.graph, model.tree_weights())
        ratio = math.exp(brute_force_log_Zd(model, p) - brute_force_log_Z(model))
        assert ratio == pytest.approx(512.0, rel=1e-10)

    @pytest.mark.parametrize("index", [2, 6, 9, 13, 16])
    def test_independent_of_tree(self, index):
        model = suite_model(index, ferromagnetic=True)
        values = []
        for seed in (1, 2, 3):
            p = random_spanning_tree(model.graph, seed)
            values.append((brute_force_log_ZM(model, p), brute_force_log_Zd(model, p)))
        for zm, zd in values[1:]:
            assert zm == pytest.approx(values[0][0], abs=1e-10)
            assert zd == pytest.approx(values[0][1], abs=1e-10)


class TestClosedForm:
    @pytest.mark.parametrize("n", range(3, 17))
    def test_matches_brute_force(self, n):
        model = IsingModel.create(periodic_chain(n), np.random.default_rng(n).uniform(-1.5, 1.5, n))
        assert closed_form_periodic_chain_log_Z(model) == pytest.approx(brute_force_log_Z(model), abs=1e-10)

    def test_triangle(self, triangle_model):
        c, s = 2.0 * math.cosh(1.0), 2.0 * math.sinh(1.0)
        assert closed_form_periodic_chain_log_Z(triangle_model) == pytest.approx(math.log(c ** 3 + s ** 3))

    def test_parallel_pair(self):
        a, b = 0.3, -0.8
        model = IsingModel.create(build_graph(2, [(0, 1), (0, 1)]), [a, b])
        expected = math.log(4 * math.cosh(a) * math.cosh(b) + 4 * math.sinh(a) * math.sinh(b))
        assert closed_form_periodic_chain_log_Z(model) == pytest.approx(expected, abs=1e-12)

    def test_free_spins(self):
        model = IsingModel.create(periodic_chain(7), np.zeros(7))
        assert closed_form_periodic_chain_log_Z(model) == pytest.approx(7 * LN2, abs=1e-12)

    def test_rejects_other_graphs(self):
        grid = lattice_2d(2, 3)
        assert not is_single_cycle(grid)
        with pytest.raises(NotACycleGraph):
            closed_form_periodic_chain_log_Z(IsingModel.create(grid, np.ones(grid.edge_count)))


class TestExactChiSquare:
    def test_triangle(self, triangle_model, triangle_partition):
        e = math.exp(-2.0)
        primal = (1 + e) ** 2 * (1 + e ** 2 + 2 * e ** 3) / (1 + 3 * e ** 2) ** 2 - 1
        t = math.tanh(1.0)
        dual = (1 + t) * (1 + t ** 5) / (1 + t ** 3) ** 2 - 1
        assert exact_chi_square_primal(triangle_model, triangle_partition) == pytest.approx(primal, rel=1e-10)
        assert exact_chi_square_dual(triangle_model, triangle_partition) == pytest.approx(dual, rel=1e-10)

    def test_zero_chords(self, triangle, triangle_partition, path3):
        model = IsingModel.create(triangle, [1.0, 0.4, 0.0])
        assert exact_chi_square_primal(model, triangle_partition) == 0.0
        assert exact_chi_square_dual(model, triangle_partition) == 0.0
        tree = IsingModel.create(path3, [0.5, 0.9])
        assert exact_chi_square_dual(tree, TreePartition(path3, [0, 1])) == 0.0

    def test_weak_chord_limit(self):
        graph = lattice_2d(2, 3)
        p = maximum_spanning_tree(graph, np.ones(graph.edge_count))
        previous = math.inf
        for chord_J in (0.8, 0.4, 0.2, 0.1, 0.0):
            J = np.where([p.is_branch(i) for i in range(graph.edge_count)], 1.0, chord_J)
            chi = exact_chi_square_primal(IsingModel.create(graph, J), p)
            assert chi <= previous
            previous = chi
        assert previous == 0.0

    def test_strong_branch_limit(self):
        graph = lattice_2d(2, 3)
        p = maximum_spanning_tree(graph, np.ones(graph.edge_count))
        previous = math.inf
        for branch_J in (0.5, 1.0, 2.0, 4.0, 8.0):
            J = np.where([p.is_branch(i) for i in range(graph.edge_count)], branch_J, 0.5)
            chi = exact_chi_square_dual(IsingModel.create(graph, J), p)
            assert chi <= previous
            previous = chi
        assert previous < 1e-5

    @pytest.mark.parametrize("J, better", [(0.2, 'primal'), (2.0, 'dual')])
    def test_regime_crossover(self, J, better):
        model = IsingModel.create(lattice_2d(3, 3, periodic=True), np.full(18, J))
        p = maximum_spanning_tree(model.graph, model.tree_weights())
        primal = exact_chi_square_primal(model, p)
        dual = exact_chi_square_dual(model, p)
        assert (primal < dual) if better == 'primal' else (dual < primal)


@pytest.mark.slow
def test_enumeration_independent_of_threads():
    # 2**18 assignments: four chunks
    graph = lattice_2d(3, 6, periodic=True)
    model = IsingModel.create(graph, np.random.default_rng(0).uniform(0.0, 1.0, graph.edge_count))
    assert brute_force_log_Z(model, threads=1) == brute_force_log_Z(model, threads=4)
    assert brute_force_log_Z(model, threads=1) == brute_force_log_Z(model, threads=3)
