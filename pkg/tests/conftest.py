"""Shared fixtures: small graphs, models, a seeded random-graph factory and golden files."""
import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest

from isingdual.graph import TreePartition, build_graph, maximum_spanning_tree
from isingdual.model import IsingModel

GOLDEN_DIR = Path(__file__).parent / "golden"

# Timing never matches between runs.
IGNORED_KEYS = {'wall_time_seconds'}


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def single_edge():
    return build_graph(2, [(0, 1)])


@pytest.fixture
def four_cycle():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle_model(triangle):
    return IsingModel.create(triangle, [1.0, 1.0, 1.0])


@pytest.fixture
def triangle_partition(triangle):
    # branches {0, 1}, chord 2
    return TreePartition(triangle, [0, 1])


def make_random_graph(rng: np.random.Generator, max_vertices: int = 10, max_edges: int = 20):
    """Random connected multigraph: a random tree plus extra edges, parallel ones included."""
    n = int(rng.integers(2, max_vertices + 1))
    pairs = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    for _ in range(int(rng.integers(0, max_edges - (n - 1) + 1))):
        u, v = rng.choice(n, size=2, replace=False)
        pairs.append((int(u), int(v)))
    order = rng.permutation(len(pairs))
    return build_graph(n, [pairs[i] for i in order])


@pytest.fixture
def random_graph():
    """Factory: ``random_graph(seed, max_vertices=10, max_edges=20)``."""
    def factory(seed: int, max_vertices: int = 10, max_edges: int = 20):
        return make_random_graph(np.random.default_rng(seed), max_vertices, max_edges)
    return factory


@pytest.fixture
def random_model(random_graph):
    """Factory: random graph with uniform couplings in [lo, hi] and its |J| maximum spanning tree."""
    def factory(seed: int, lo: float = -1.5, hi: float = 1.5, **graph_args):
        graph = random_graph(seed, **graph_args)
        rng = np.random.default_rng(seed + 10_000)
        model = IsingModel.create(graph, rng.uniform(lo, hi, graph.edge_count))
        return model, maximum_spanning_tree(graph, model.tree_weights())
    return factory


@pytest.fixture
def all_assignments():
    """Factory: every 0/1 row of length k, shape (2**k, k); one empty row when k = 0."""
    def factory(k: int):
        return ((np.arange(1 << k)[:, None] >> np.arange(k)) & 1).astype(np.uint8)
    return factory


def assert_matches_golden(actual, expected, path: str = "report") -> None:
    """Structural equality; floats to 1e-9 relative, timing keys skipped."""
    if isinstance(expected, dict):
        assert isinstance(actual, dict), path
        assert set(actual) - IGNORED_KEYS == set(expected) - IGNORED_KEYS, path
        for key, value in expected.items():
            if key not in IGNORED_KEYS:
                assert_matches_golden(actual[key], value, f"{path}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), path
        for i, (a, e) in enumerate(zip(actual, expected)):
            assert_matches_golden(a, e, f"{path}[{i}]")
    elif isinstance(expected, float):
        assert actual == pytest.approx(expected, rel=1e-9), path
    else:
        assert actual == expected, path


def _as_float(text: str):
    try:
        return float(text)
    except ValueError:
        return None


def assert_csv_matches_golden(actual: str, expected: str) -> None:
    actual_rows = list(csv.DictReader(io.StringIO(actual)))
    expected_rows = list(csv.DictReader(io.StringIO(expected)))
    assert actual.splitlines()[0] == expected.splitlines()[0]
    assert len(actual_rows) == len(expected_rows)
    for got, want in zip(actual_rows, expected_rows):
        for key, value in want.items():
            if key.rsplit('.', 1)[-1] in IGNORED_KEYS:
                continue
            a, e = _as_float(got[key]), _as_float(value)
            if a is not None and e is not None:
                assert a == pytest.approx(e, rel=1e-9), key
            else:
                assert got[key] == value, key


@pytest.fixture
def golden():
    """Loader and comparators for files under tests/golden."""
    class Golden:
        @staticmethod
        def text(name: str) -> str:
            return (GOLDEN_DIR / name).read_text(encoding='utf-8')

        @staticmethod
        def json(name: str):
            return json.loads(Golden.text(name))

        @staticmethod
        def check_json(actual_text: str, name: str) -> None:
            assert_matches_golden(json.loads(actual_text), Golden.json(name))

        @staticmethod
        def check_csv(actual_text: str, name: str) -> None:
            assert_csv_matches_golden(actual_text, Golden.text(name))

    return Golden
