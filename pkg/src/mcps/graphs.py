"""Directed-graph representation, construction, traversal and serialization.

Vertices are dense integer ids 0..n-1; edges carry stable dense indices
0..m-1 in construction order. Graphs are simple (no self-loops, no parallel
edges) and immutable after construction, so they are safe to share freely.
All iteration orders are ascending by id/index to keep every downstream
computation reproducible.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Optional

from .errors import EdgeListParseError


class DirectedGraph:
    """A simple directed graph over vertices 0..n-1.

    `labels` is optional vertex metadata (e.g. generator provenance) and is
    never part of graph identity; `meta` records generator seeds/parameters.
    Instances are immutable after construction and safe to share; `_cache`
    only memoizes derived values (topological order, closures, verdicts),
    which are idempotent to recompute.
    """

    __slots__ = ("n", "edges", "labels", "meta", "orig_index",
                 "_out", "_in", "_edge_index", "_cache")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 labels: Optional[dict[int, str]] = None,
                 meta: Optional[dict] = None,
                 orig_index: Optional[tuple[int, ...]] = None):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {i} endpoint out of range: ({u}, {v})")
            if u == v:
                raise ValueError(f"edge {i} is a self-loop at {u}")
            if (u, v) in seen:
                raise ValueError(f"edge {i} duplicates ({u}, {v})")
            seen.add((u, v))
        self.n = n
        self.edges = edges
        self.labels = dict(labels) if labels else {}
        self.meta = dict(meta) if meta else {}
        self.orig_index = orig_index
        out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            out[u].append((i, v))
            inc[v].append((i, u))
        self._out = out
        self._in = inc
        self._edge_index = {e: i for i, e in enumerate(edges)}
        self._cache: dict = {}

    @property
    def m(self) -> int:
        return len(self.edges)

    def out_edges(self, v: int) -> list[tuple[int, int]]:
        """(edge index, head) pairs leaving v, ascending by edge index."""
        return self._out[v]

    def in_edges(self, v: int) -> list[tuple[int, int]]:
        """(edge index, tail) pairs entering v, ascending by edge index."""
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def edge_index(self, u: int, v: int) -> Optional[int]:
        return self._edge_index.get((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_index

    def reachable_from(self, u: int) -> set[int]:
        """Vertices reachable from u via directed edges, including u."""
        if not (0 <= u < self.n):
            raise ValueError(f"vertex {u} out of range")
        seen = {u}
        queue = deque([u])
        while queue:
            w = queue.popleft()
            for _, head in self._out[w]:
                if head not in seen:
                    seen.add(head)
                    queue.append(head)
        return seen

    def reaching(self, v: int) -> set[int]:
        """Vertices that reach v via directed edges, including v."""
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range")
        seen = {v}
        queue = deque([v])
        while queue:
            w = queue.popleft()
            for _, tail in self._in[w]:
                if tail not in seen:
                    seen.add(tail)
                    queue.append(tail)
        return seen

    def spanning_subgraph(self, edge_set: "EdgeSet | Iterable[int]") -> "DirectedGraph":
        """Same vertex set, exactly the given edges; original indices kept."""
        indices = _as_sorted_indices(edge_set, self.m)
        return DirectedGraph(self.n, [self.edges[i] for i in indices],
                             labels=self.labels, orig_index=tuple(indices))

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> Optional[list[int]]:
        """A topological order (Kahn, smallest id first), or None if cyclic."""
        if "topo" in self._cache:
            return self._cache["topo"]
        indeg = [self.in_degree(v) for v in range(self.n)]
        import heapq
        ready = [v for v in range(self.n) if indeg[v] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for _, head in self._out[v]:
                indeg[head] -= 1
                if indeg[head] == 0:
                    heapq.heappush(ready, head)
        result = order if len(order) == self.n else None
        self._cache["topo"] = result
        return result

    def find_cycle(self) -> Optional[list[int]]:
        """Some directed cycle as a vertex list, or None. Iterative DFS."""
        color = [0] * self.n  # 0 unvisited, 1 on stack, 2 done
        parent: dict[int, int] = {}
        for root in range(self.n):
            if color[root]:
                continue
            stack: list[tuple[int, int]] = [(root, 0)]
            color[root] = 1
            while stack:
                v, i = stack[-1]
                if i < len(self._out[v]):
                    stack[-1] = (v, i + 1)
                    head = self._out[v][i][1]
                    if color[head] == 1:
                        cycle = [head]
                        w = v
                        while w != head:
                            cycle.append(w)
                            w = parent[w]
                        cycle.reverse()
                        return cycle
                    if color[head] == 0:
                        color[head] = 1
                        parent[head] = v
                        stack.append((head, 0))
                else:
                    color[v] = 2
                    stack.pop()
        return None

    def sources(self) -> list[int]:
        """Vertices with in-degree 0, ascending."""
        return [v for v in range(self.n) if not self._in[v]]

    def sinks(self) -> list[int]:
        """Vertices with out-degree 0, ascending."""
        return [v for v in range(self.n) if not self._out[v]]

    def __eq__(self, other) -> bool:
        return (isinstance(other, DirectedGraph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, m={self.m})"


class EdgeSet:
    """An immutable set of edge indices of a specific host graph."""

    __slots__ = ("m", "indices")

    def __init__(self, indices: Iterable[int], m: int):
        idx = frozenset(int(i) for i in indices)
        for i in idx:
            if not (0 <= i < m):
                raise ValueError(f"edge index {i} out of range for m={m}")
        self.m = m
        self.indices = idx

    @classmethod
    def full(cls, graph: DirectedGraph) -> "EdgeSet":
        return cls(range(graph.m), graph.m)

    @classmethod
    def from_pairs(cls, graph: DirectedGraph, pairs: Iterable[tuple[int, int]]) -> "EdgeSet":
        indices = []
        for u, v in pairs:
            i = graph.edge_index(u, v)
            if i is None:
                raise ValueError(f"no edge ({u}, {v}) in host graph")
            indices.append(i)
        return cls(indices, graph.m)

    def sorted(self) -> list[int]:
        return sorted(self.indices)

    def pairs(self, graph: DirectedGraph) -> list[tuple[int, int]]:
        return [graph.edges[i] for i in self.sorted()]

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.indices)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EdgeSet)
                and self.m == other.m and self.indices == other.indices)

    def __hash__(self):
        return hash((self.m, self.indices))

    def __repr__(self):
        return f"EdgeSet({self.sorted()}, m={self.m})"


def _as_sorted_indices(edge_set, m: int) -> list[int]:
    if isinstance(edge_set, EdgeSet):
        if edge_set.m != m:
            raise ValueError(f"edge set is over m={edge_set.m}, host has m={m}")
        return edge_set.sorted()
    indices = sorted(set(int(i) for i in edge_set))
    if indices and not (0 <= indices[0] and indices[-1] < m):
        raise ValueError("edge index out of range")
    return indices


def parse_edge_list(text: str) -> DirectedGraph:
    """Parse the edge-list format: header "n m", then m lines "tail head".

    Lines starting with '#' are ignored. Errors name the offending 1-based
    line of the original text.
    """
    header: Optional[tuple[int, int]] = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(line_no, f"expected two fields, got {len(parts)}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(line_no, f"non-integer field in {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError(line_no, "negative count in header")
            header = (a, b)
            header_line = line_no
            continue
        edges.append((a, b))
        edge_lines.append(line_no)
    if header is None:
        raise EdgeListParseError(1, "missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise EdgeListParseError(header_line,
                                 f"header promises {m} edges, found {len(edges)}")
    seen: dict[tuple[int, int], int] = {}
    for (u, v), line_no in zip(edges, edge_lines):
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListParseError(line_no, f"vertex id out of range 0..{n - 1}")
        if u == v:
            raise EdgeListParseError(line_no, f"self-loop at {u}")
        if (u, v) in seen:
            raise EdgeListParseError(line_no,
                                     f"duplicate edge ({u}, {v}), first on line {seen[u, v]}")
        seen[(u, v)] = line_no
    return DirectedGraph(n, edges)


def to_edge_list(graph: DirectedGraph) -> str:
    """Serialize to the edge-list format; parse(to_edge_list(g)) == g."""
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def to_dot(graph: DirectedGraph, highlight: "EdgeSet | Iterable[int] | None" = None) -> str:
    """Render as a DOT digraph, one edge statement per line in index order.

    Highlighted edges get a red color attribute. Output is byte-deterministic
    for a fixed input.
    """
    marked = set(_as_sorted_indices(highlight, graph.m)) if highlight is not None else set()
    lines = ["digraph {"]
    for v in sorted(graph.labels):
        lines.append(f'  {v} [label="{graph.labels[v]}"];')
    for i, (u, v) in enumerate(graph.edges):
        attr = " [color=red]" if i in marked else ""
        lines.append(f"  {u} -> {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def induced_on_edges(graph: DirectedGraph, indices: Iterable[int]) -> tuple[DirectedGraph, list[int]]:
    """Subgraph on the given edges restricted to their incident vertices.

    Returns the relabeled graph plus the list mapping new vertex ids back to
    original ids (sorted ascending, so the relabeling is deterministic).
    """
    idx = sorted(set(indices))
    verts = sorted({w for i in idx for w in graph.edges[i]})
    vmap = {w: k for k, w in enumerate(verts)}
    sub = DirectedGraph(len(verts), [(vmap[graph.edges[i][0]], vmap[graph.edges[i][1]]) for i in idx],
                        orig_index=tuple(idx))
    return sub, verts
