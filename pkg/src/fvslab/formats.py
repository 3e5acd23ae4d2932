"""graph6 and plain adjacency-list text formats.

The adjacency format is a header line ``n m`` followed by ``m`` lines ``u v``
over vertices ``0..n-1``.  Repeated lines are parallel edges and ``u u`` is a
loop, so it also carries multigraphs.  graph6 only encodes simple graphs.
"""

from pathlib import Path

import networkx as nx

from .errors import DomainError
from .graph import Graph


def to_graph6(g):
    if not g.is_simple:
        raise DomainError("graph6 encodes simple graphs only")
    compact, _ = g.compact()
    return nx.to_graph6_bytes(compact.to_networkx(), nodes=list(range(compact.n)),
                              header=False).decode("ascii").strip()


def from_graph6(text):
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(text.encode("ascii"))
    except (ValueError, nx.NetworkXError) as exc:
        raise DomainError(f"bad graph6 string {text!r}: {exc}") from None
    return Graph(range(nxg.number_of_nodes()), nxg.edges())


def to_adjacency_text(g):
    compact, _ = g.compact()
    lines = [f"{compact.n} {compact.m}"]
    lines += [f"{u} {v}" for u, v in compact.edges]
    return "\n".join(lines) + "\n"


def from_adjacency_text(text):
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise DomainError("adjacency text needs an 'n m' header line")
    n, m = (int(x) for x in rows[0])
    body = rows[1:]
    if len(body) != m:
        raise DomainError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    for row in body:
        if len(row) != 2:
            raise DomainError(f"bad edge line {' '.join(row)!r}")
        u, v = int(row[0]), int(row[1])
        if not (0 <= u < n and 0 <= v < n):
            raise DomainError(f"edge {u} {v} outside 0..{n - 1}")
        edges.append((u, v))
    return Graph(range(n), edges)


def parse_graphs(text):
    """Parse either format: adjacency text if the first line is ``n m``, else graph6 lines."""
    stripped = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not stripped:
        return []
    first = stripped[0].split()
    if len(first) == 2 and all(tok.lstrip("-").isdigit() for tok in first):
        return [from_adjacency_text(text)]
    return [from_graph6(ln) for ln in stripped]


def read_graph_file(path):
    graphs = parse_graphs(Path(path).read_text())
    if not graphs:
        raise DomainError(f"{path}: no graph found")
    return graphs


def write_graph6_list(graphs, path):
    Path(path).write_text("".join(to_graph6(g) + "\n" for g in graphs))
