"""Connected multigraphs with stable edge ids and edge-set algebra over GF(2).

Vertices are 0-based everywhere.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from ..errors import DisconnectedGraph, EmptyEdgeList, InvalidVertex, SelfLoop


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, k: int) -> int:
        root = k
        while root != self.parent[root]:
            root = self.parent[root]
        while k != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a: int, b: int) -> bool:
        root_a = self.find(a)
        root_b = self.find(b)
        if root_a == root_b:
            return False
        # smaller root wins so the structure is independent of call order
        if root_b < root_a:
            root_a, root_b = root_b, root_a
        self.parent[root_b] = root_a
        self.components -= 1
        return True


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u


class Graph:
    """Immutable connected multigraph. Parallel edges allowed, self-loops not."""

    def __init__(self, vertex_count: int, endpoints: Sequence[Tuple[int, int]]):
        self._vertex_count = int(vertex_count)
        self._edges = tuple(Edge(i, int(u), int(v)) for i, (u, v) in enumerate(endpoints))
        self._u = np.array([e.u for e in self._edges], dtype=np.int64)
        self._v = np.array([e.v for e in self._edges], dtype=np.int64)
        self._u.setflags(write=False)
        self._v.setflags(write=False)
        incident: List[List[int]] = [[] for _ in range(self._vertex_count)]
        for e in self._edges:
            incident[e.u].append(e.id)
            incident[e.v].append(e.id)
        self._incident = tuple(tuple(ids) for ids in incident)

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def endpoints_u(self) -> np.ndarray:
        return self._u

    @property
    def endpoints_v(self) -> np.ndarray:
        return self._v

    def edge(self, edge_id: int) -> Edge:
        return self._edges[edge_id]

    def incident(self, vertex: int) -> Tuple[int, ...]:
        """Edge ids touching ``vertex``, ascending."""
        return self._incident[vertex]

    def degree(self, vertex: int) -> int:
        return len(self._incident[vertex])

    def endpoint_pairs(self) -> List[Tuple[int, int]]:
        return [(e.u, e.v) for e in self._edges]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertex_count == other._vertex_count and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertex_count, self._edges))

    def __repr__(self) -> str:
        return f"<Graph |V|={self.vertex_count} |E|={self.edge_count}>"


def build_graph(vertex_count: int, endpoints: Iterable[Tuple[int, int]]) -> Graph:
    """Validate and build a graph; edge ids follow input order."""
    if vertex_count < 1:
        raise InvalidVertex(f"vertex_count must be >= 1, got {vertex_count}")
    pairs = [(int(u), int(v)) for u, v in endpoints]
    if vertex_count > 1 and not pairs:
        raise EmptyEdgeList(vertex_count)

    uf = UnionFind(vertex_count)
    for edge_id, (u, v) in enumerate(pairs):
        for x in (u, v):
            if not 0 <= x < vertex_count:
                raise InvalidVertex(f"edge {edge_id} references vertex {x}, valid range is 0..{vertex_count - 1}")
        if u == v:
            raise SelfLoop(edge_id, u)
        uf.union(u, v)
    if uf.components > 1:
        raise DisconnectedGraph(uf.components)
    return Graph(vertex_count, pairs)


class EdgeSet:
    """Bit vector over edge ids; addition is XOR (the GF(2) edge space)."""

    __slots__ = ('_bits', '_size')

    def __init__(self, size: int, bits: int = 0):
        self._size = size
        self._bits = bits

    @classmethod
    def from_ids(cls, size: int, ids: Iterable[int]) -> 'EdgeSet':
        bits = 0
        for i in ids:
            if not 0 <= i < size:
                raise IndexError(f"edge id {i} out of range for {size} edges")
            bits |= 1 << i
        return cls(size, bits)

    @classmethod
    def from_mask(cls, mask: Sequence) -> 'EdgeSet':
        return cls.from_ids(len(mask), (i for i, bit in enumerate(mask) if bit))

    @property
    def size(self) -> int:
        return self._size

    def to_mask(self) -> np.ndarray:
        mask = np.zeros(self._size, dtype=np.uint8)
        for i in self:
            mask[i] = 1
        return mask

    def __contains__(self, edge_id: int) -> bool:
        return 0 <= edge_id < self._size and bool((self._bits >> edge_id) & 1)

    def __iter__(self) -> Iterator[int]:
        bits, i = self._bits, 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __len__(self) -> int:
        return bin(self._bits).count('1')

    def __xor__(self, other: 'EdgeSet') -> 'EdgeSet':
        return EdgeSet(self._size, self._bits ^ other._bits)

    def __and__(self, other: 'EdgeSet') -> 'EdgeSet':
        return EdgeSet(self._size, self._bits & other._bits)

    def __or__(self, other: 'EdgeSet') -> 'EdgeSet':
        return EdgeSet(self._size, self._bits | other._bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, EdgeSet):
            return self._size == other._size and self._bits == other._bits
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._size, self._bits))

    def __bool__(self) -> bool:
        return self._bits != 0

    def __repr__(self) -> str:
        return f"EdgeSet({sorted(self)})"


def cut_edges(graph: Graph, vertex_subset: Iterable[int]) -> EdgeSet:
    """Edges with exactly one endpoint inside ``vertex_subset``."""
    side = np.zeros(graph.vertex_count, dtype=bool)
    for x in vertex_subset:
        side[x] = True
    crossing = side[graph.endpoints_u] != side[graph.endpoints_v]
    return EdgeSet.from_mask(crossing)


def is_even_subgraph(graph: Graph, edges: EdgeSet) -> bool:
    """True when every vertex has even degree in ``edges`` (cycle-space membership)."""
    degree: Dict[int, int] = {}
    for i in edges:
        e = graph.edge(i)
        degree[e.u] = degree.get(e.u, 0) + 1
        degree[e.v] = degree.get(e.v, 0) + 1
    return all(d % 2 == 0 for d in degree.values())


def component_count(graph: Graph, removed: EdgeSet) -> int:
    """Number of components after deleting ``removed``."""
    uf = UnionFind(graph.vertex_count)
    for e in graph.edges:
        if e.id not in removed:
            uf.union(e.u, e.v)
    return uf.components
