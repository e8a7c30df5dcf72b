"""Simple undirected graphs on vertex set {0, ..., n-1}, plus leader bookkeeping."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np


class GraphDisconnectedError(ValueError):
    """Raised when an operation needs a connected graph and the graph is not."""


class Graph:
    """Undirected simple graph backed by adjacency sets.

    Vertices are the integers 0..n-1.  Self-loops and parallel edges are
    rejected.  Equality compares vertex count and edge sets.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for graph on {self.n} nodes")

    def add_edge(self, u: int, v: int) -> bool:
        """Insert edge {u, v}; return True if it was new, False if already present."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u} is not allowed")
        if v in self._adj[u]:
            return False
        self._adj[u].add(v)
        self._adj[v].add(u)
        return True

    def remove_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if v not in self._adj[u]:
            raise ValueError(f"edge ({u}, {v}) not in graph")
        self._adj[u].discard(v)
        self._adj[v].discard(u)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def neighbors(self, v: int) -> set[int]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def edge_count(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (min, max) pairs in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def non_edges(self) -> list[tuple[int, int]]:
        """All vertex pairs (u < v) that are not edges, in lexicographic order."""
        return [
            (u, v)
            for u, v in combinations(range(self.n), 2)
            if v not in self._adj[u]
        ]

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g._adj = [set(a) for a in self._adj]
        return g

    def distances_from(self, source: int) -> list[int | None]:
        """BFS distances from source; None marks unreachable vertices."""
        self._check_vertex(source)
        dist: list[int | None] = [None] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if dist[y] is None:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def distance(self, u: int, v: int) -> int | None:
        """Length of a shortest u-v path, or None if disconnected."""
        self._check_vertex(v)
        return self.distances_from(u)[v]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return all(d is not None for d in self.distances_from(0))

    def diameter(self) -> int:
        """Largest shortest-path distance; raises GraphDisconnectedError."""
        if self.n == 0:
            raise GraphDisconnectedError("diameter of the empty graph is undefined")
        best = 0
        for s in range(self.n):
            dist = self.distances_from(s)
            for d in dist:
                if d is None:
                    raise GraphDisconnectedError(
                        "diameter undefined: graph is disconnected"
                    )
                if d > best:
                    best = d
        return best

    def laplacian(self) -> np.ndarray:
        """Combinatorial Laplacian L = D - A as a dense float array."""
        lap = np.zeros((self.n, self.n), dtype=float)
        for u in range(self.n):
            lap[u, u] = len(self._adj[u])
            for v in self._adj[u]:
                lap[u, v] = -1.0
        return lap

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


@dataclass(frozen=True)
class LeaderSet:
    """Distinguished input nodes, stored as a sorted, duplicate-free id tuple."""

    ids: tuple[int, ...]

    def __post_init__(self):
        if len(self.ids) == 0:
            raise ValueError("a leader set must contain at least one node")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError(f"duplicate leader ids: {self.ids}")
        if any(i < 0 for i in self.ids):
            raise ValueError(f"negative leader id in {self.ids}")
        object.__setattr__(self, "ids", tuple(sorted(self.ids)))

    def validate_for(self, g: Graph) -> None:
        for i in self.ids:
            if i >= g.n:
                raise ValueError(f"leader id {i} out of range for graph on {g.n} nodes")

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids)

    def __contains__(self, v: int) -> bool:
        return v in self.ids


def new_graph(n: int, edges: Iterable[tuple[int, int]] = ()) -> Graph:
    return Graph(n, edges)


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def to_edge_list_text(g: Graph) -> str:
    """Serialize as one 'u v' line per edge, preceded by a '# n=<count>' header.

    The header keeps isolated trailing vertices from being lost on re-read.
    """
    lines = [f"# n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str, n: int | None = None) -> Graph:
    """Parse the format written by to_edge_list_text.

    Blank lines are skipped.  '# n=<count>' fixes the vertex count; other
    comment lines are ignored.  Without a header (or explicit n), the count
    is max id + 1.
    """
    pairs: list[tuple[int, int]] = []
    header_n: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n="):
                header_n = int(body[2:])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = header_n
    if n is None:
        n = 1 + max((max(u, v) for u, v in pairs), default=-1)
    return Graph(n, pairs)


def export_dot(g: Graph, leaders: LeaderSet | None = None,
               labels: dict[int, str] | None = None) -> str:
    """Render as Graphviz source; leaders are drawn as filled boxes."""
    if leaders is not None:
        leaders.validate_for(g)
    out = ["graph G {"]
    for v in range(g.n):
        attrs = []
        if labels and v in labels:
            attrs.append(f'label="{labels[v]}"')
        if leaders is not None and v in leaders:
            attrs.append('shape=box style=filled fillcolor="gray80"')
        out.append(f"  {v}" + (f" [{' '.join(attrs)}]" if attrs else "") + ";")
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
