"""Edge-list text format: one ``u v J`` per line, 0-based vertices.

``#`` starts a comment (whole line or trailing), blank lines are ignored and the
line order fixes the edge ids. J may be decimal or scientific notation.
"""
import math
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from ..errors import EmptyEdgeList, MalformedLine, NonFiniteCoupling
from ..graph.core import Graph, build_graph


def parse_edge_list(text: str) -> Tuple[Graph, NDArray[np.float64]]:
    endpoints: List[Tuple[int, int]] = []
    couplings: List[float] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise MalformedLine(line_number, raw, f"expected 3 fields, found {len(fields)}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise MalformedLine(line_number, raw, "vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise MalformedLine(line_number, raw, "vertex ids must be non-negative")
        try:
            J = float(fields[2])
        except ValueError:
            raise MalformedLine(line_number, raw, "coupling is not a number") from None
        if not math.isfinite(J):
            raise NonFiniteCoupling(f"line {line_number}: coupling {fields[2]!r} is not finite", line_number)
        endpoints.append((u, v))
        couplings.append(J)

    if not endpoints:
        raise EmptyEdgeList(0)
    vertex_count = 1 + max(max(u, v) for u, v in endpoints)
    return build_graph(vertex_count, endpoints), np.array(couplings, dtype=np.float64)


def render_edge_list(graph: Graph, couplings: Sequence[float],
                     header: Optional[Iterable[str]] = None) -> str:
    lines = [f"# {h}" for h in (header or [])]
    for edge, J in zip(graph.edges, couplings):
        lines.append(f"{edge.u} {edge.v} {float(J)!r}")
    return "\n".join(lines) + "\n"


def load_edge_list(path: Union[str, Path]) -> Tuple[Graph, NDArray[np.float64]]:
    data = Path(path).read_bytes()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        line_number = data.count(b"\n", 0, e.start) + 1
        raw = data.split(b"\n")[line_number - 1].rstrip(b"\r").decode('utf-8', errors='replace')
        raise MalformedLine(line_number, raw, f"byte {e.object[e.start]:#04x} is not valid UTF-8") from None
    return parse_edge_list(text)


def save_edge_list(path: Union[str, Path], graph: Graph, couplings: Sequence[float],
                   header: Optional[Iterable[str]] = None) -> None:
    Path(path).write_text(render_edge_list(graph, couplings, header), encoding='utf-8')
