"""Immutable adjacency-list graphs and the BFS primitives everything builds on.

Vertices are ``0..n-1``; adjacency rows are strictly increasing tuples and
symmetric.  A parallel bitmask view (one big int per vertex) backs the
set-algebra used by the decomposition routines.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence

from .distances import UNREACHABLE, Distance


class GraphError(ValueError):
    """Invalid construction input or violated precondition."""


class DisconnectedGraphError(GraphError):
    """Raised by algorithms whose contract requires a connected graph."""


class Graph:
    """Finite simple undirected graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "m", "had_duplicates", "_masks")

    def __init__(self, n: int, adj: Sequence[tuple[int, ...]], m: int,
                 had_duplicates: bool = False):
        self.n = n
        self.adj = tuple(adj)
        self.m = m
        self.had_duplicates = had_duplicates
        self._masks: tuple[int, ...] | None = None

    # -- construction ----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return build_graph(n, edges)

    # -- basic queries ---------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        row = self.adj[u]
        lo, hi = 0, len(row)
        while lo < hi:
            mid = (lo + hi) // 2
            if row[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(row) and row[lo] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def masks(self) -> tuple[int, ...]:
        """Neighborhood bitmasks, one int per vertex (built lazily)."""
        if self._masks is None:
            out = []
            for row in self.adj:
                mask = 0
                for v in row:
                    mask |= 1 << v
                out.append(mask)
            self._masks = tuple(out)
        return self._masks

    # -- derived graphs --------------------------------------------------

    def complement(self) -> "Graph":
        n = self.n
        adj = []
        m = 0
        for u in range(n):
            nbrs = set(self.adj[u])
            row = tuple(v for v in range(n) if v != u and v not in nbrs)
            m += len(row)
            adj.append(row)
        return Graph(n, adj, m // 2)

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Subgraph induced by ``vertices``; returns it with the id map.

        The map sends new ids back to the originals.
        """
        order = sorted(vertices)
        index = {v: i for i, v in enumerate(order)}
        adj = []
        m = 0
        for v in order:
            row = tuple(index[w] for w in self.adj[v] if w in index)
            m += len(row)
            adj.append(row)
        return Graph(len(order), adj, m // 2), order

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under ``perm``: vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel requires a permutation of 0..n-1")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            adj[perm[u]] = sorted(perm[w] for w in self.adj[u])
        return Graph(self.n, [tuple(r) for r in adj], self.m)

    # -- connectivity ----------------------------------------------------

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.connected_components()) == 1

    def co_components(self) -> list[list[int]]:
        """Connected components of the complement, without building it.

        BFS over the complement using the standard unvisited-set trick,
        so the cost stays near-linear even for dense graphs.
        """
        unvisited = set(range(self.n))
        comps = []
        while unvisited:
            s = min(unvisited)
            unvisited.discard(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                nbrs = set(self.adj[u])
                reach = [w for w in unvisited if w not in nbrs]
                for w in reach:
                    unvisited.discard(w)
                    comp.append(w)
                queue.extend(reach)
            comps.append(sorted(comp))
        return comps

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and self.adj == other.adj)

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Canonical simple graph from an edge list.

    Duplicate edges are collapsed (the result carries ``had_duplicates``);
    self-loops and out-of-range endpoints are rejected with the offending
    input index.
    """
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    sets: list[set[int]] = [set() for _ in range(n)]
    had_duplicates = False
    for idx, (u, v) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge #{idx} ({u},{v}) has an endpoint out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge #{idx} is a self-loop at {u}")
        if v in sets[u]:
            had_duplicates = True
            continue
        sets[u].add(v)
        sets[v].add(u)
    adj = [tuple(sorted(s)) for s in sets]
    m = sum(len(r) for r in adj) // 2
    return Graph(n, adj, m, had_duplicates)


def bfs_distances(g: Graph, source: int) -> list[Distance]:
    """Exact hop distances from ``source``; UNREACHABLE off-component."""
    if not (0 <= source < g.n):
        raise GraphError(f"source {source} out of range")
    dist: list[Distance] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] is UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def substitute(quotient: Graph, parts: Sequence[Graph]) -> Graph:
    """Blow each quotient vertex up into a part, joining adjacent parts.

    Parts are laid out in quotient-vertex order; each part's vertex set is
    a module of the result.
    """
    if len(parts) != quotient.n:
        raise GraphError(
            f"substitution arity mismatch: quotient has {quotient.n} vertices, "
            f"{len(parts)} parts given")
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    edges: list[tuple[int, int]] = []
    for i, p in enumerate(parts):
        base = offsets[i]
        edges.extend((base + u, base + v) for u, v in p.edges())
    for i, j in quotient.edges():
        bi, bj = offsets[i], offsets[j]
        for u in range(parts[i].n):
            for v in range(parts[j].n):
                edges.append((bi + u, bj + v))
    return build_graph(total, edges)


# -- edge-list file format ------------------------------------------------
#
#   # comment
#   n m
#   u v          (m lines, 0-based)
#
# Writers emit each edge once with u < v, sorted lexicographically.

def write_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edgelist(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise GraphError(f"line {lineno}: expected 'n m' header")
            header = (int(fields[0]), int(fields[1]))
            continue
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        edges.append((int(fields[0]), int(fields[1])))
    if header is None:
        raise GraphError("empty edge-list file")
    n, m = header
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, file has {len(edges)}")
    return build_graph(n, edges)
