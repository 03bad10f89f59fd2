"""Benchmark topologies and coupling fields."""
from typing import Callable, Dict, List, Optional

import numpy as np
from numpy.typing import NDArray
from rapidfuzz import fuzz, process

from ..errors import InvalidCouplings, TooSmall, UsageError
from ..graph.core import Graph, build_graph


def periodic_chain(n: int) -> Graph:
    """Cycle on n vertices; edge i joins i and (i + 1) mod n."""
    if n < 3:
        raise TooSmall(f"periodic chain needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def lattice_2d(rows: int, cols: int, periodic: bool = False) -> Graph:
    """rows x cols grid, vertex r*cols + c; horizontal edges then vertical ones per site."""
    least = 3 if periodic else 2
    if rows < least or cols < least:
        kind = "periodic" if periodic else "open"
        raise TooSmall(f"{kind} lattice needs rows, cols >= {least}, got {rows}x{cols}")

    def site(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols or periodic:
                edges.append((site(r, c), site(r, (c + 1) % cols)))
            if r + 1 < rows or periodic:
                edges.append((site(r, c), site((r + 1) % rows, c)))
    return build_graph(rows * cols, edges)


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise TooSmall(f"complete graph needs n >= 2, got {n}")
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def couplings_constant(graph: Graph, J: float) -> NDArray[np.float64]:
    if not np.isfinite(J):
        raise InvalidCouplings(f"coupling must be finite, got {J!r}")
    return np.full(graph.edge_count, float(J))


def couplings_uniform(graph: Graph, lo: float, hi: float, seed: int) -> NDArray[np.float64]:
    """i.i.d. uniform couplings in [lo, hi], reproducible from ``seed``."""
    if lo > hi:
        raise InvalidCouplings(f"empty interval [{lo}, {hi}]")
    if lo == hi:
        return np.full(graph.edge_count, float(lo))
    rng = np.random.Generator(np.random.Philox(seed))
    return rng.uniform(lo, hi, graph.edge_count)


TOPOLOGIES: Dict[str, Callable[..., Graph]] = {
    'chain': lambda n=None, **_: periodic_chain(_required(n, 'n', 'chain')),
    'grid': lambda rows=None, cols=None, periodic=False, **_: lattice_2d(
        _required(rows, 'rows', 'grid'), _required(cols, 'cols', 'grid'), periodic),
    'complete': lambda n=None, **_: complete_graph(_required(n, 'n', 'complete')),
}

COUPLING_KINDS = ('const', 'uniform')


def _required(value, flag: str, topology: str):
    if value is None:
        raise UsageError(f"topology {topology!r} needs --{flag}")
    return value


def suggest(word: str, choices, min_score: int = 60) -> Optional[str]:
    """Closest known name for a misspelled one."""
    match = process.extractOne(word, list(choices), scorer=fuzz.ratio)
    if match and match[1] >= min_score:
        return match[0]
    return None


def unknown_choice(kind: str, word: str, choices) -> UsageError:
    hint = suggest(word, choices)
    message = f"unknown {kind} {word!r}; choose from {', '.join(choices)}"
    if hint:
        message += f" (did you mean {hint!r}?)"
    return UsageError(message)


def build_topology(name: str, **params) -> Graph:
    try:
        factory = TOPOLOGIES[name]
    except KeyError:
        raise unknown_choice("topology", name, list(TOPOLOGIES)) from None
    return factory(**params)


def couplings_from_spec(graph: Graph, spec: str, default_seed: int = 0) -> NDArray[np.float64]:
    """``const:<J>`` or ``uniform:<lo>:<hi>[:<seed>]``."""
    kind, _, rest = spec.partition(':')
    parts: List[str] = rest.split(':') if rest else []
    try:
        if kind == 'const' and len(parts) == 1:
            return couplings_constant(graph, float(parts[0]))
        if kind == 'uniform' and len(parts) in (2, 3):
            seed = int(parts[2]) if len(parts) == 3 else default_seed
            return couplings_uniform(graph, float(parts[0]), float(parts[1]), seed)
    except ValueError as e:
        if isinstance(e, InvalidCouplings):
            raise
        raise UsageError(f"bad coupling spec {spec!r}: {e}") from None
    if kind not in COUPLING_KINDS:
        raise unknown_choice("coupling kind", kind, list(COUPLING_KINDS))
    raise UsageError(f"bad coupling spec {spec!r}; use const:<J> or uniform:<lo>:<hi>[:<seed>]")
