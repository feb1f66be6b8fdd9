from typing import Dict, List, Tuple

from pydantic import ValidationError

from hyperplant.core.errors import InvalidArgumentError
from hyperplant.hypergraph.structures import Hypergraph, rank_edge


def format_hypergraph(graph: Hypergraph, headers: Dict[str, str] | None = None) -> str:
    """Text format: "n r", then one edge per line in rank order; headers become '# key: value' lines."""
    lines: List[str] = [f"# {key}: {value}" for key, value in (headers or {}).items()]
    lines.append(f"{graph.n} {graph.r}")
    for e in sorted(graph.edges, key=lambda edge: rank_edge(edge, graph.n, graph.r)):
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Tuple[Hypergraph, Dict[str, str]]:
    """Inverse of format_hypergraph; also returns the '# key: value' headers it found."""
    headers: Dict[str, str] = {}
    rows: List[List[int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                headers[key.strip()] = value.strip()
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as e:
            raise InvalidArgumentError(f"Malformed hypergraph line: {raw!r}") from e

    if not rows or len(rows[0]) != 2:
        raise InvalidArgumentError("Hypergraph text must start with an 'n r' line")
    (n, r), edge_rows = rows[0], rows[1:]
    for row in edge_rows:
        if len(row) != r or any(b <= a for a, b in zip(row, row[1:])):
            raise InvalidArgumentError(f"Edge line {row} is not {r} increasing vertex ids")
    try:
        graph = Hypergraph(n=n, r=r, edges=[tuple(row) for row in edge_rows])
    except ValidationError as e:
        raise InvalidArgumentError(str(e)) from e
    if len(graph.edges) != len(edge_rows):
        raise InvalidArgumentError("Hypergraph text lists a duplicate edge")
    return graph, headers
