"""Directed storage / side-information graphs.

Vertices are 0-based inside the library.  The text format and every report
use 1-based vertex numbers.

File format::

    # comment
    n m [undirected]
    u v        (m lines; v is in N(u), or an undirected edge with the flag)
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BadSize, ParseError, SelfLoop, VertexOutOfRange


@dataclass(frozen=True)
class StorageGraph:
    n: int
    out_neighbors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise BadSize("a graph needs at least one vertex")
        if len(self.out_neighbors) != self.n:
            raise BadSize(f"{len(self.out_neighbors)} neighbor lists for {self.n} vertices")
        for i, nbrs in enumerate(self.out_neighbors):
            if i in nbrs:
                raise SelfLoop(f"self-loop at vertex {i + 1}")
            for a, b in zip(nbrs, nbrs[1:]):
                if a >= b:
                    raise ValueError(f"N({i + 1}) is not strictly increasing")
            for j in nbrs:
                if not 0 <= j < self.n:
                    raise VertexOutOfRange(f"vertex {j + 1} outside 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], undirected: bool = False) -> StorageGraph:
        """Build from 0-based ``(u, v)`` pairs meaning ``v in N(u)``."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u + 1}, {v + 1}) outside 1..{n}")
            nbrs[u].add(v)
            if undirected:
                nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self.out_neighbors[i]

    def edges(self) -> list[tuple[int, int]]:
        """Directed edges in row-major order."""
        return [(i, j) for i, nbrs in enumerate(self.out_neighbors) for j in nbrs]

    @property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.out_neighbors)


def parse_graph(text: str) -> StorageGraph:
    header = None
    edges: list[tuple[int, int]] = []
    undirected = False
    declared = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) not in (2, 3) or (len(tokens) == 3 and tokens[2] != "undirected"):
                raise ParseError("expected header 'n m [undirected]'", lineno)
            try:
                n, declared = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 1 or declared < 0:
                raise ParseError("need n >= 1 and m >= 0", lineno)
            undirected = len(tokens) == 3
            header = n
            continue
        if len(tokens) != 2:
            raise ParseError("expected an edge 'u v'", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError("vertex labels must be integers", lineno) from None
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", lineno)
        if not (1 <= u <= header and 1 <= v <= header):
            raise VertexOutOfRange(f"vertex outside 1..{header}", lineno)
        edges.append((u - 1, v - 1))
    if header is None:
        raise ParseError("missing header line")
    if len(edges) != declared:
        raise ParseError(f"header declares {declared} edges, found {len(edges)}")
    return StorageGraph.from_edges(header, edges, undirected=undirected)


def load_graph(path: str | Path) -> StorageGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def serialize_graph(g: StorageGraph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def cycle_graph(n: int) -> StorageGraph:
    if n < 3:
        raise BadSize("a cycle needs at least 3 vertices")
    return StorageGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], undirected=True)


def complete_graph(n: int) -> StorageGraph:
    if n < 1:
        raise BadSize("a graph needs at least one vertex")
    return StorageGraph.from_edges(n, [(i, j) for i in range(n) for j in range(n) if i != j])


def empty_graph(n: int) -> StorageGraph:
    if n < 1:
        raise BadSize("a graph needs at least one vertex")
    return StorageGraph(n, ((),) * n)


# The five-server example network: N(1)={2,3,4,5}, N(2)={1,3}, N(3)={1,2,4},
# N(4)={1,3,5}, N(5)={1,4}.
_FIVE_SERVER_NEIGHBORS: Sequence[Sequence[int]] = ((2, 3, 4, 5), (1, 3), (1, 2, 4), (1, 3, 5), (1, 4))


def five_server_graph() -> StorageGraph:
    return StorageGraph(5, tuple(tuple(v - 1 for v in nbrs) for nbrs in _FIVE_SERVER_NEIGHBORS))


def is_symmetric(g: StorageGraph) -> bool:
    adj = [set(nbrs) for nbrs in g.out_neighbors]
    return all(u in adj[v] for u in range(g.n) for v in adj[u])


GENERATORS = {
    "cycle": cycle_graph,
    "complete": complete_graph,
    "empty": empty_graph,
}
