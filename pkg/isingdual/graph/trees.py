"""Spanning-tree partitions and their fundamental cycle / cutset bases.

A ``TreePartition`` stores one binary incidence matrix ``M`` of shape |T| x |T̄|:
``M[i, j] == 1`` iff the i-th branch lies on the fundamental cycle of the j-th chord.
Columns give fundamental cycles, rows give fundamental cutsets.
"""
import logging
from collections import deque
from typing import Dict, Optional, Sequence, Set, Tuple

import numpy as np

from ..errors import InconsistentAssignment, InvalidCouplings, NotABranch, NotAChord
from .core import EdgeSet, Graph, UnionFind, is_even_subgraph

logger = logging.getLogger(__name__)

ROOT_VERTEX = 0


class TreePartition:
    """A spanning tree T of a graph, its chords T̄ and the incidence between them."""

    def __init__(self, graph: Graph, branch_ids: Sequence[int], weights: Optional[Sequence[float]] = None):
        self.graph = graph
        branches = sorted(int(b) for b in branch_ids)
        branch_set = set(branches)
        self.branch_ids: Tuple[int, ...] = tuple(branches)
        self.chord_ids: Tuple[int, ...] = tuple(i for i in range(graph.edge_count) if i not in branch_set)
        self._branch_pos: Dict[int, int] = {b: i for i, b in enumerate(self.branch_ids)}
        self._chord_pos: Dict[int, int] = {c: j for j, c in enumerate(self.chord_ids)}
        self.root = ROOT_VERTEX
        self.total_weight = float(sum(weights[b] for b in branches)) if weights is not None else None

        self.parent_edge, self.parent_vertex, self.order = self._orient()
        self.incidence = self._build_incidence()
        for arr in (self.parent_edge, self.parent_vertex, self.incidence):
            arr.setflags(write=False)

    def _orient(self):
        """BFS from the root over tree edges; ascending edge ids keep it deterministic."""
        n = self.graph.vertex_count
        parent_edge = np.full(n, -1, dtype=np.int64)
        parent_vertex = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[self.root] = True
        order = [self.root]
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for edge_id in self.graph.incident(x):
                if edge_id not in self._branch_pos:
                    continue
                y = self.graph.edge(edge_id).other(x)
                if seen[y]:
                    continue
                seen[y] = True
                parent_edge[y] = edge_id
                parent_vertex[y] = x
                order.append(y)
                queue.append(y)
        if len(order) != n or len(self.branch_ids) != n - 1:
            raise InconsistentAssignment(
                f"branch set of size {len(self.branch_ids)} is not a spanning tree of {n} vertices")
        return parent_edge, parent_vertex, tuple(order)

    def _build_incidence(self) -> np.ndarray:
        n = self.graph.vertex_count
        # root_paths[v] marks the branches on the tree path root -> v
        root_paths = np.zeros((n, len(self.branch_ids)), dtype=np.uint8)
        for v in self.order[1:]:
            root_paths[v] = root_paths[self.parent_vertex[v]]
            root_paths[v, self._branch_pos[int(self.parent_edge[v])]] = 1
        incidence = np.zeros((len(self.branch_ids), len(self.chord_ids)), dtype=np.uint8)
        for j, c in enumerate(self.chord_ids):
            e = self.graph.edge(c)
            incidence[:, j] = root_paths[e.u] ^ root_paths[e.v]
        return incidence

    @property
    def branch_count(self) -> int:
        return len(self.branch_ids)

    @property
    def chord_count(self) -> int:
        return len(self.chord_ids)

    def is_branch(self, edge_id: int) -> bool:
        return edge_id in self._branch_pos

    def is_chord(self, edge_id: int) -> bool:
        return edge_id in self._chord_pos

    def branch_position(self, edge_id: int) -> int:
        try:
            return self._branch_pos[edge_id]
        except KeyError:
            raise NotABranch(edge_id) from None

    def chord_position(self, edge_id: int) -> int:
        try:
            return self._chord_pos[edge_id]
        except KeyError:
            raise NotAChord(edge_id) from None

    def incidence_rows(self) -> np.ndarray:
        """Rows ordered by ascending branch id (one fundamental cutset each)."""
        return self.incidence

    def incidence_columns(self) -> np.ndarray:
        """Rows ordered by ascending chord id (one fundamental cycle each)."""
        return self.incidence.T

    def __repr__(self) -> str:
        return f"<TreePartition |T|={self.branch_count} |T̄|={self.chord_count}>"


def maximum_spanning_tree(graph: Graph, weights: Sequence[float]) -> TreePartition:
    """Kruskal on descending weight; ties go to the smaller edge id."""
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (graph.edge_count,):
        raise InvalidCouplings(f"expected {graph.edge_count} weights, got {w.size}")
    if not np.all(np.isfinite(w)):
        raise InvalidCouplings("tree weights must be finite")

    order = sorted(range(graph.edge_count), key=lambda i: (-w[i], i))
    uf = UnionFind(graph.vertex_count)
    branches = []
    for edge_id in order:
        e = graph.edge(edge_id)
        if uf.union(e.u, e.v):
            branches.append(edge_id)
            if len(branches) == graph.vertex_count - 1:
                break

    partition = TreePartition(graph, branches, w)
    logger.info("spanning tree: |T|=%d |T̄|=%d total weight %.6g",
                partition.branch_count, partition.chord_count, partition.total_weight)
    return partition


def random_spanning_tree(graph: Graph, seed: int) -> TreePartition:
    """Maximum spanning tree on i.i.d. uniform weights drawn from ``seed``."""
    rng = np.random.Generator(np.random.Philox(seed))
    return maximum_spanning_tree(graph, rng.random(graph.edge_count))


def fundamental_cycle(partition: TreePartition, chord: int) -> EdgeSet:
    """The chord plus the tree path between its endpoints."""
    j = partition.chord_position(chord)
    column = partition.incidence[:, j]
    ids = [partition.branch_ids[i] for i in np.flatnonzero(column)]
    ids.append(chord)
    return EdgeSet.from_ids(partition.graph.edge_count, ids)


def fundamental_cutset(partition: TreePartition, branch: int) -> EdgeSet:
    """The branch plus every chord whose fundamental cycle uses it."""
    i = partition.branch_position(branch)
    row = partition.incidence[i, :]
    ids = [partition.chord_ids[j] for j in np.flatnonzero(row)]
    ids.append(branch)
    return EdgeSet.from_ids(partition.graph.edge_count, ids)


def decompose_in_cycle_basis(partition: TreePartition, edges: EdgeSet) -> Set[int]:
    """Chords whose fundamental cycles XOR to ``edges``."""
    if not is_even_subgraph(partition.graph, edges):
        raise InconsistentAssignment(f"{edges!r} is not in the cycle space")
    chords = {i for i in edges if partition.is_chord(i)}
    total = EdgeSet(partition.graph.edge_count)
    for c in chords:
        total = total ^ fundamental_cycle(partition, c)
    if total != edges:
        raise InconsistentAssignment(f"{edges!r} is not spanned by the fundamental cycles")
    return chords
